import { ComponentRow, ServedInterval } from "./types.js";

/** Display rounding for served decimal strings; never feeds back into math. */
export function fixed(value: string | number, digits = 3): string {
  const parsed = typeof value === "number" ? value : parseFloat(value);
  return parsed.toFixed(digits);
}

export function intervalText(interval: ServedInterval): string {
  const open = interval.lower_closed ? "[" : "(";
  const close = interval.upper_closed ? "]" : ")";
  return `${open}${fixed(interval.lower)}, ${fixed(interval.upper)}${close}`;
}

/** Belief mass not yet committed by the analyst: 1 - sum of masses. */
export function residualMass(components: ComponentRow[]): number {
  const assigned = components.reduce((total, row) => total + row.v, 0);
  return Math.max(0, 1 - assigned);
}

export interface RowProblem {
  index: number;
  message: string;
}

/** Client-side mirror of the judgment invariants, for inline flagging only. */
export function validateComponents(components: ComponentRow[]): RowProblem[] {
  const problems: RowProblem[] = [];
  components.forEach((row, index) => {
    if (!Number.isFinite(row.b) || row.b < 0 || row.b > 1) {
      problems.push({ index, message: "value must lie in [0, 1]" });
    }
    if (!Number.isFinite(row.v) || row.v <= 0) {
      problems.push({ index, message: "mass must be positive" });
    }
  });
  const total = components.reduce(
    (sum, row) => sum + (Number.isFinite(row.v) ? row.v : 0),
    0,
  );
  if (total > 1 + 1e-12) {
    problems.push({ index: -1, message: `masses sum to ${total.toFixed(3)} > 1` });
  }
  const sorted = components
    .map((row) => row.b)
    .filter((b) => Number.isFinite(b))
    .sort((a, b) => a - b);
  for (let i = 1; i < sorted.length; i += 1) {
    if (sorted[i] - sorted[i - 1] <= 1e-9) {
      problems.push({ index: -1, message: "values must be distinct" });
      break;
    }
  }
  return problems;
}
