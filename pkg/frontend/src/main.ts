import { ApiClient } from "./api";
import { attachDiagnosticKeys } from "./keyboard";
import {
  renderCandidate,
  renderCompletion,
  renderDiagnosticButtons,
  renderError,
  renderProgress,
  renderRatioPanel,
  renderSynsetCard,
} from "./render";
import { AnnotationSession } from "./session";
import type { Diagnostic } from "./types";

const api = new ApiClient("");

function pane(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing pane #${id}`);
  return node;
}

async function refreshStats(session: AnnotationSession): Promise<void> {
  try {
    const stats = await api.getStats();
    const mine = stats.find((s) => s.method === session.sampleId) ?? null;
    renderRatioPanel(pane("ratios"), mine);
  } catch {
    // stats are advisory; keep the previous panel on transient failures
  }
}

async function browseSynset(synsetId: string): Promise<void> {
  try {
    const synset = await api.getSynset(synsetId);
    const browser = pane("browser");
    browser.replaceChildren();
    browser.append(renderSynsetCard(synset, (sid) => void browseSynset(sid)));
  } catch (err) {
    renderError(pane("errors"), err instanceof Error ? err.message : String(err));
  }
}

function paint(session: AnnotationSession): void {
  const state = session.state;
  renderError(pane("errors"), state.error);
  if (state.complete) {
    renderCompletion(pane("candidate"), state.finalRatios);
    renderRatioPanel(pane("ratios"), state.finalRatios);
    pane("controls").replaceChildren();
    return;
  }
  if (state.current) {
    renderCandidate(pane("candidate"), state.current, (sid) => void browseSynset(sid));
    renderProgress(pane("progress"), state.current.progress);
    renderDiagnosticButtons(
      pane("controls"),
      (diagnostic) => void judge(session, diagnostic),
      session.previousDiagnostic(
        state.current.link.source_word,
        state.current.link.synset,
      ),
    );
    void browseSynset(state.current.link.synset);
  }
}

async function judge(session: AnnotationSession, diagnostic: Diagnostic): Promise<void> {
  await session.submit(diagnostic);
  paint(session);
  await refreshStats(session);
}

async function boot(): Promise<void> {
  const samples = await api.listSamples();
  if (samples.length === 0) {
    renderError(pane("errors"), "no samples available; run the sample stage first");
    return;
  }
  const params = new URLSearchParams(window.location.search);
  const sampleId = params.get("sample") ?? samples[0].id;
  const annotator = params.get("annotator") ?? "anonymous";
  const session = new AnnotationSession(api, sampleId, annotator);
  attachDiagnosticKeys(window, (diagnostic) => void judge(session, diagnostic));
  await session.start();
  paint(session);
  await refreshStats(session);
}

void boot().catch((err) => {
  renderError(pane("errors"), err instanceof Error ? err.message : String(err));
});
