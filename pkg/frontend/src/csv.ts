/** Strict reader for the producer's CSV dialect: '.' decimals, no quoting. */

export class ValidationError extends Error {}

export function parseCsv(text: string, expectedHeader: string[]): number[][] {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new ValidationError("empty CSV");
  }
  const header = lines[0]!.split(",");
  if (header.join(",") !== expectedHeader.join(",")) {
    throw new ValidationError(
      `CSV header mismatch: expected "${expectedHeader.join(",")}", got "${header.join(",")}"`,
    );
  }
  if (lines.length === 1) {
    throw new ValidationError("CSV has a header but no data rows");
  }
  const rows: number[][] = [];
  for (let i = 1; i < lines.length; i++) {
    const cells = lines[i]!.split(",");
    if (cells.length !== expectedHeader.length) {
      throw new ValidationError(`row ${i} has ${cells.length} cells, expected ${expectedHeader.length}`);
    }
    const row = cells.map((cell) => {
      const value = Number(cell);
      if (cell.trim() === "" || !Number.isFinite(value)) {
        throw new ValidationError(`row ${i} holds a non-numeric cell: "${cell}"`);
      }
      return value;
    });
    rows.push(row);
  }
  return rows;
}
