import { DIAGNOSTICS, type Diagnostic } from "./types";

const IGNORED_TAGS = new Set(["INPUT", "TEXTAREA", "SELECT"]);

// Keys 1..5 map to the five diagnostics in panel order.
export function diagnosticForKey(key: string): Diagnostic | null {
  const index = Number.parseInt(key, 10) - 1;
  return index >= 0 && index < DIAGNOSTICS.length ? DIAGNOSTICS[index] : null;
}

export function attachDiagnosticKeys(
  target: EventTarget,
  onDiagnostic: (diagnostic: Diagnostic) => void,
): () => void {
  const handler = (event: Event) => {
    const keyEvent = event as KeyboardEvent;
    const element = keyEvent.target as HTMLElement | null;
    if (element && (IGNORED_TAGS.has(element.tagName) || element.isContentEditable)) {
      return;
    }
    const diagnostic = diagnosticForKey(keyEvent.key);
    if (diagnostic) {
      keyEvent.preventDefault();
      onDiagnostic(diagnostic);
    }
  };
  target.addEventListener("keydown", handler);
  return () => target.removeEventListener("keydown", handler);
}
