// Replays the recorded validation-API fixture: GET endpoints serve the
// captured payloads, POST /api/verdicts must receive exactly the captured
// bodies, in order.
import recordedJson from "./fixtures/recorded_api.json";

export interface RecordedStep {
  next: unknown;
  verdict_request: Record<string, unknown>;
  verdict_status: number;
  verdict_response: unknown;
}

export interface Recorded {
  samples: unknown;
  synset_400: unknown;
  word_perro: unknown;
  flow: RecordedStep[];
  final_next: unknown;
  stats: unknown;
  five_diagnostics: {
    request: Record<string, unknown>;
    status: number;
    response: unknown;
  }[];
}

export const recorded = recordedJson as unknown as Recorded;

function json(payload: unknown, status = 200): Response {
  return new Response(JSON.stringify(payload), {
    status,
    headers: { "content-type": "application/json" },
  });
}

export class FakeApi {
  step = 0;
  reviewerStep = 0;
  posted: Record<string, unknown>[] = [];

  fetch = async (input: string, init?: RequestInit): Promise<Response> => {
    const url = new URL(input, "http://fake");
    const method = init?.method ?? "GET";

    if (method === "GET" && url.pathname === "/api/samples") {
      return json(recorded.samples);
    }
    if (method === "GET" && url.pathname === "/api/samples/cd1/next") {
      if (this.step < recorded.flow.length) {
        return json(recorded.flow[this.step].next);
      }
      return json(recorded.final_next);
    }
    if (method === "GET" && url.pathname === "/api/stats") {
      return json(recorded.stats);
    }
    if (method === "GET" && url.pathname === "/api/synsets/400") {
      return json(recorded.synset_400);
    }
    if (method === "GET" && url.pathname === "/api/words/perro") {
      return json(recorded.word_perro);
    }

    if (method === "POST" && url.pathname === "/api/verdicts") {
      const body = JSON.parse(String(init?.body)) as Record<string, unknown>;
      this.posted.push(body);
      if (body.annotator === "reviewer") {
        const expected = recorded.five_diagnostics[this.reviewerStep];
        if (!expected || !sameBody(body, expected.request)) {
          return json({ detail: "unexpected reviewer verdict" }, 400);
        }
        this.reviewerStep += 1;
        return json(expected.response, expected.status);
      }
      const expected = recorded.flow[this.step];
      if (!expected || !sameBody(body, expected.verdict_request)) {
        return json({ detail: "verdict does not match the recording" }, 400);
      }
      this.step += 1;
      return json(expected.verdict_response, expected.verdict_status);
    }

    return json({ detail: `unrecorded route ${method} ${url.pathname}` }, 404);
  };
}

function sameBody(a: Record<string, unknown>, b: Record<string, unknown>): boolean {
  const keys = new Set([...Object.keys(a), ...Object.keys(b)]);
  for (const key of keys) {
    if (a[key] !== b[key]) return false;
  }
  return true;
}
