// Payload shapes mirrored from the validation API. The UI never invents
// data: everything rendered comes from one of these responses.

export type Diagnostic = "ok" | "ko" | "hypo" | "hyper" | "near";

export const DIAGNOSTICS: Diagnostic[] = ["ok", "ko", "hypo", "hyper", "near"];

export interface LinkRef {
  source_word: string;
  synset: string;
  method: string;
  score: number | null;
  evidence: string[];
}

export interface SynsetView {
  id: string;
  variants: string[];
  depth: number;
  parents: string[];
  children: string[];
  hypernym_chain: string[];
}

export interface Translation {
  source_lemma: string;
  target_lemma: string;
  field_id: string | null;
  origin: string;
}

export interface Definition {
  headword: string;
  sense_no: number;
  definition: string;
  genus: string | null;
}

export interface Progress {
  judged: number;
  total: number;
}

export interface RatioReport {
  method: string;
  ratios: Record<Diagnostic, number>;
  sample_size: number;
  pending: number;
}

export interface CandidateView {
  done: false;
  link: LinkRef;
  synset: SynsetView;
  translations: Translation[];
  definitions: Definition[];
  progress: Progress;
}

export interface SampleComplete {
  done: true;
  progress: Progress;
  ratios: RatioReport | null;
}

export type NextResponse = CandidateView | SampleComplete;

export interface SampleSummary {
  id: string;
  method: string;
  fraction: number;
  seed: number;
  judged: number;
  total: number;
}

export interface VerdictRequest {
  sample_id: string;
  source_word: string;
  synset: string;
  diagnostic: Diagnostic;
  annotator: string;
}

export interface WordView {
  lemma: string;
  translations: Translation[];
  definitions: Definition[];
  links: { source_word: string; synset: string; method: string; score: number | null }[];
}
