/** Parsing and validation of the sweep CSV schema emitted by the triloc CLI. */

export const CSV_HEADER = [
  "tau",
  "r",
  "delta",
  "s_svetlichny",
  "s_bound",
  "chsh_ab",
  "pi_tangle",
  "survival",
  "error",
] as const;

export type MetricColumn = "s_svetlichny" | "s_bound" | "chsh_ab" | "pi_tangle" | "survival";

export interface SweepRow {
  tau: number;
  r: number;
  delta: number;
  s_svetlichny: number | null;
  s_bound: number | null;
  chsh_ab: number | null;
  pi_tangle: number | null;
  survival: number | null;
  error: string | null;
}

export class SchemaMismatch extends Error {
  constructor(message: string) {
    super(message);
    this.name = "SchemaMismatch";
  }
}

function parseNumber(field: string, column: string, line: number): number {
  const value = Number(field);
  if (field === "" || !Number.isFinite(value)) {
    throw new SchemaMismatch(`column "${column}": non-numeric value "${field}" on line ${line}`);
  }
  return value;
}

function parseOptional(field: string, column: string, line: number): number | null {
  return field === "" ? null : parseNumber(field, column, line);
}

export function parseSweepCsv(text: string): SweepRow[] {
  const lines = text.split(/\r?\n/).filter((l) => l.length > 0);
  if (lines.length === 0) {
    throw new SchemaMismatch("empty CSV");
  }
  const header = lines[0].split(",");
  for (let i = 0; i < CSV_HEADER.length; i++) {
    if (header[i] !== CSV_HEADER[i]) {
      throw new SchemaMismatch(
        `column ${i}: expected "${CSV_HEADER[i]}", found "${header[i] ?? "<missing>"}"`,
      );
    }
  }
  if (header.length !== CSV_HEADER.length) {
    throw new SchemaMismatch(`unexpected extra column "${header[CSV_HEADER.length]}"`);
  }
  const rows: SweepRow[] = [];
  for (let i = 1; i < lines.length; i++) {
    const parts = lines[i].split(",");
    if (parts.length !== CSV_HEADER.length) {
      throw new SchemaMismatch(`line ${i + 1}: expected ${CSV_HEADER.length} fields, found ${parts.length}`);
    }
    rows.push({
      tau: parseNumber(parts[0], "tau", i + 1),
      r: parseNumber(parts[1], "r", i + 1),
      delta: parseNumber(parts[2], "delta", i + 1),
      s_svetlichny: parseOptional(parts[3], "s_svetlichny", i + 1),
      s_bound: parseOptional(parts[4], "s_bound", i + 1),
      chsh_ab: parseOptional(parts[5], "chsh_ab", i + 1),
      pi_tangle: parseOptional(parts[6], "pi_tangle", i + 1),
      survival: parseOptional(parts[7], "survival", i + 1),
      error: parts[8] === "" ? null : parts[8],
    });
  }
  return rows;
}

/** Distinct coupling ratios in first-appearance order. */
export function groupByRatio(rows: SweepRow[]): Map<number, SweepRow[]> {
  const groups = new Map<number, SweepRow[]>();
  for (const row of rows) {
    const bucket = groups.get(row.r);
    if (bucket) {
      bucket.push(row);
    } else {
      groups.set(row.r, [row]);
    }
  }
  return groups;
}

/** Requires a column to be populated somewhere in the rows. */
export function requireMetric(rows: SweepRow[], column: MetricColumn): void {
  if (!rows.some((row) => row[column] !== null)) {
    throw new SchemaMismatch(`column "${column}": no values present`);
  }
}
