import { DIAGNOSTICS, type Diagnostic, type RatioReport } from "./types";

export interface RatioRow {
  diagnostic: Diagnostic;
  value: number;
  display: string;
}

export function formatPercent(value: number): string {
  return `${(value * 100).toFixed(1)}%`;
}

// Rows in the fixed diagnostic order, formatted for the panel.
export function ratioRows(report: RatioReport): RatioRow[] {
  return DIAGNOSTICS.map((diagnostic) => {
    const value = report.ratios[diagnostic] ?? 0;
    return { diagnostic, value, display: formatPercent(value) };
  });
}

export function ratiosSumToOne(report: RatioReport): boolean {
  const total = DIAGNOSTICS.reduce((sum, d) => sum + (report.ratios[d] ?? 0), 0);
  return Math.abs(total - 1) < 1e-9;
}
