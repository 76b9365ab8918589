import type {
  NextResponse,
  RatioReport,
  SampleSummary,
  SynsetView,
  VerdictRequest,
  WordView,
} from "./types";

export class ApiError extends Error {
  constructor(public status: number, public detail: string) {
    super(`API error ${status}: ${detail}`);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private base: string = "",
    private fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async get<T>(path: string): Promise<T> {
    const response = await this.fetchFn(this.base + path);
    if (!response.ok) {
      throw new ApiError(response.status, await describe(response));
    }
    return (await response.json()) as T;
  }

  listSamples(): Promise<SampleSummary[]> {
    return this.get("/api/samples");
  }

  nextCandidate(sampleId: string, annotator: string): Promise<NextResponse> {
    const params = new URLSearchParams({ annotator });
    return this.get(`/api/samples/${encodeURIComponent(sampleId)}/next?${params}`);
  }

  getSynset(id: string): Promise<SynsetView> {
    return this.get(`/api/synsets/${encodeURIComponent(id)}`);
  }

  getWord(lemma: string): Promise<WordView> {
    return this.get(`/api/words/${encodeURIComponent(lemma)}`);
  }

  getStats(): Promise<RatioReport[]> {
    return this.get("/api/stats");
  }

  async submitVerdict(verdict: VerdictRequest): Promise<{ stored: number }> {
    const response = await this.fetchFn(this.base + "/api/verdicts", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(verdict),
    });
    if (response.status !== 201) {
      throw new ApiError(response.status, await describe(response));
    }
    return (await response.json()) as { stored: number };
  }
}

async function describe(response: Response): Promise<string> {
  try {
    const payload = await response.json();
    return typeof payload?.detail === "string"
      ? payload.detail
      : JSON.stringify(payload);
  } catch {
    return response.statusText;
  }
}
