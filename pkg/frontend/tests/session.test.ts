import { describe, expect, it } from "vitest";

import { ApiClient } from "../src/api";
import { AnnotationSession } from "../src/session";
import type { Diagnostic, RatioReport } from "../src/types";
import { FakeApi, recorded } from "./helpers";

const EXPECTED_RATIOS = { ok: 0.8, ko: 0.0, hypo: 0.1, hyper: 0.0, near: 0.1 };

function sessionWithFake() {
  const fake = new FakeApi();
  const api = new ApiClient("", fake.fetch);
  return { fake, api, session: new AnnotationSession(api, "cd1", "tester") };
}

describe("annotation session against the recorded API", () => {
  it("completes the 10-link sample and reports the server ratios", async () => {
    const { fake, api, session } = sessionWithFake();
    await session.start();
    expect(session.state.current).not.toBeNull();

    for (const step of recorded.flow) {
      const diagnostic = step.verdict_request.diagnostic as Diagnostic;
      const before = session.state.current!;
      expect(before.link.source_word).toBe(step.verdict_request.source_word);
      await session.submit(diagnostic);
      expect(session.state.error).toBeNull();
    }

    expect(fake.step).toBe(10);
    expect(session.state.complete).toBe(true);
    expect(session.judgedCount()).toBe(10);
    expect(session.state.finalRatios?.ratios).toEqual(EXPECTED_RATIOS);

    const stats = (await api.getStats()) as RatioReport[];
    expect(stats[0].ratios).toEqual(EXPECTED_RATIOS);
    expect(stats[0].sample_size).toBe(10);
    expect(stats[0].pending).toBe(0);
  });

  it("posts verdict bodies exactly as the server recorded them", async () => {
    const { fake, session } = sessionWithFake();
    await session.start();
    for (const step of recorded.flow) {
      await session.submit(step.verdict_request.diagnostic as Diagnostic);
    }
    expect(fake.posted).toEqual(recorded.flow.map((s) => s.verdict_request));
  });

  it("remembers the confirmed diagnostic for revisits", async () => {
    const { session } = sessionWithFake();
    await session.start();
    const first = recorded.flow[0];
    await session.submit(first.verdict_request.diagnostic as Diagnostic);
    expect(
      session.previousDiagnostic(
        first.verdict_request.source_word as string,
        first.verdict_request.synset as string,
      ),
    ).toBe(first.verdict_request.diagnostic);
  });

  it("keeps the candidate and surfaces the error on a rejected verdict", async () => {
    const { session } = sessionWithFake();
    await session.start();
    // the recording expects "ok" first; submitting "ko" is rejected
    const wrong: Diagnostic =
      (recorded.flow[0].verdict_request.diagnostic as Diagnostic) === "ko" ? "ok" : "ko";
    await session.submit(wrong);
    expect(session.state.error).toContain("400");
    expect(session.state.current).not.toBeNull();
    expect(session.judgedCount()).toBe(0);
  });
});

describe("five diagnostic kinds", () => {
  it("round-trip through POST /api/verdicts", async () => {
    const fake = new FakeApi();
    const api = new ApiClient("", fake.fetch);
    for (const step of recorded.five_diagnostics) {
      const result = await api.submitVerdict({
        sample_id: step.request.sample_id as string,
        source_word: step.request.source_word as string,
        synset: step.request.synset as string,
        diagnostic: step.request.diagnostic as Diagnostic,
        annotator: step.request.annotator as string,
      });
      expect(step.status).toBe(201);
      expect(result).toEqual(step.response);
    }
    expect(fake.reviewerStep).toBe(5);
    const kinds = recorded.five_diagnostics.map((s) => s.request.diagnostic);
    expect(kinds).toEqual(["ok", "ko", "hypo", "hyper", "near"]);
  });
});
