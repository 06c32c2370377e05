/**
 * Minimal CSV handling for the extension output format: one header line
 * naming the columns, comma-separated numeric cells, empty cells allowed
 * (black-box runs leave the reference columns blank).
 */

export interface Table {
  header: string[];
  rows: string[][];
}

export function parseCsv(text: string): Table {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new Error("CSV is empty");
  }
  const header = lines[0].split(",").map((cell) => cell.trim());
  const rows = lines.slice(1).map((line) => line.split(",").map((cell) => cell.trim()));
  for (const [i, row] of rows.entries()) {
    if (row.length !== header.length) {
      throw new Error(`row ${i + 2} has ${row.length} cells, header has ${header.length}`);
    }
  }
  return { header, rows };
}

export function columnIndex(table: Table, name: string): number {
  const at = table.header.indexOf(name);
  if (at < 0) {
    throw new Error(`missing column '${name}' (header: ${table.header.join(",")})`);
  }
  return at;
}

/** Numeric cells of one column; blank cells become NaN. */
export function numericColumn(table: Table, name: string): number[] {
  const at = columnIndex(table, name);
  return table.rows.map((row) => (row[at] === "" ? NaN : Number(row[at])));
}

/** True when the column is absent or has no finite entries. */
export function columnIsBlank(table: Table, name: string): boolean {
  const at = table.header.indexOf(name);
  if (at < 0) {
    return true;
  }
  return table.rows.every((row) => row[at] === "" || !Number.isFinite(Number(row[at])));
}
