import { ratioRows } from "./ratios";
import type {
  CandidateView,
  Diagnostic,
  Progress,
  RatioReport,
  SynsetView,
} from "./types";
import { DIAGNOSTICS } from "./types";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function renderCandidate(
  container: HTMLElement,
  view: CandidateView,
  onNavigate: (synsetId: string) => void,
): void {
  container.replaceChildren();
  const link = view.link;
  const heading = el("h2", "candidate-word", link.source_word);
  heading.append(el("span", "method-tag", ` ${link.method}`));
  container.append(heading);
  container.append(
    el("p", "candidate-link", `candidate synset ${link.synset} (depth ${view.synset.depth})`),
  );
  container.append(renderSynsetCard(view.synset, onNavigate));

  const translations = el("section", "translations");
  translations.append(el("h3", undefined, "bilingual entries"));
  const tlist = el("ul");
  for (const t of view.translations) {
    const fieldNote = t.field_id ? ` [${t.field_id}]` : "";
    tlist.append(el("li", undefined, `${t.source_lemma} → ${t.target_lemma}${fieldNote}`));
  }
  translations.append(tlist);
  container.append(translations);

  const definitions = el("section", "definitions");
  definitions.append(el("h3", undefined, "dictionary senses"));
  const dlist = el("ul");
  for (const d of view.definitions) {
    dlist.append(
      el("li", undefined, `${d.headword} ${d.sense_no}. ${d.definition}`),
    );
  }
  definitions.append(dlist);
  container.append(definitions);
}

export function renderSynsetCard(
  synset: SynsetView,
  onNavigate: (synsetId: string) => void,
): HTMLElement {
  const card = el("div", "synset-card");
  card.append(el("h3", undefined, `{${synset.variants.join(", ")}}`));
  const chain = el("nav", "hypernym-chain");
  synset.hypernym_chain.forEach((sid, index) => {
    if (index > 0) chain.append(el("span", "chain-sep", " → "));
    const button = el("button", "chain-node", sid);
    button.type = "button";
    button.addEventListener("click", () => onNavigate(sid));
    chain.append(button);
  });
  card.append(chain);
  const children = el("p", "hyponyms", `hyponyms: ${synset.children.join(", ") || "none"}`);
  card.append(children);
  return card;
}

export function renderDiagnosticButtons(
  container: HTMLElement,
  onDiagnostic: (diagnostic: Diagnostic) => void,
  preselected: Diagnostic | null = null,
): void {
  container.replaceChildren();
  DIAGNOSTICS.forEach((diagnostic, index) => {
    const button = el("button", "diagnostic", `${index + 1} ${diagnostic}`);
    button.type = "button";
    button.dataset.diagnostic = diagnostic;
    if (diagnostic === preselected) button.classList.add("selected");
    button.addEventListener("click", () => onDiagnostic(diagnostic));
    container.append(button);
  });
}

export function renderProgress(container: HTMLElement, progress: Progress): void {
  container.replaceChildren(
    el("span", "progress-count", `${progress.judged}/${progress.total} judged`),
  );
}

export function renderRatioPanel(
  container: HTMLElement,
  report: RatioReport | null,
): void {
  container.replaceChildren();
  container.append(el("h3", undefined, "confidence ratios"));
  if (report === null) {
    container.append(el("p", "ratio-empty", "no verdicts yet"));
    return;
  }
  const table = el("table", "ratio-table");
  for (const row of ratioRows(report)) {
    const tr = el("tr");
    tr.dataset.diagnostic = row.diagnostic;
    tr.append(el("td", "ratio-name", row.diagnostic));
    tr.append(el("td", "ratio-value", row.display));
    table.append(tr);
  }
  container.append(table);
  container.append(
    el("p", "ratio-size", `${report.sample_size} judged, ${report.pending} pending`),
  );
}

export function renderCompletion(
  container: HTMLElement,
  ratios: RatioReport | null,
): void {
  container.replaceChildren();
  container.append(el("h2", "complete", "sample complete"));
  const panel = el("div", "final-ratios");
  renderRatioPanel(panel, ratios);
  container.append(panel);
}

export function renderError(container: HTMLElement, message: string | null): void {
  container.replaceChildren();
  if (message) {
    container.append(el("p", "error-banner", message));
  }
}
