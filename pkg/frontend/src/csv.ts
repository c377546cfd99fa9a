/** Parser for the sweep CSV payload (`axis1,axis2,value,valid`).
 *
 * The service emits one row per grid cell, axis1-major, with full
 * float precision and "nan" for cells outside the possible region.
 * The parser rebuilds the two axis vectors and the dense value/valid
 * grids so the heatmap can address cells by index.
 */

export interface SweepGrid {
  grid1: number[];
  grid2: number[];
  /** values[i][j] for grid1[i], grid2[j]; NaN where invalid. */
  values: number[][];
  valid: boolean[][];
}

export function parseSweepCsv(text: string): SweepGrid {
  const lines = text.split("\n").filter((line) => line.length > 0);
  if (lines.length === 0 || lines[0] !== "axis1,axis2,value,valid") {
    throw new Error("not a sweep CSV: missing axis1,axis2,value,valid header");
  }

  // Axis keys stay strings until the shape is known, so grid lookup
  // never depends on float re-parsing.
  const axis1Keys: string[] = [];
  const axis2Keys: string[] = [];
  const axis1Index = new Map<string, number>();
  const axis2Index = new Map<string, number>();
  const cells: { i: number; j: number; value: number; valid: boolean }[] = [];

  for (const line of lines.slice(1)) {
    const parts = line.split(",");
    if (parts.length !== 4) {
      throw new Error(`malformed sweep CSV row: ${line}`);
    }
    const [a1, a2, rawValue, rawValid] = parts;
    let i = axis1Index.get(a1);
    if (i === undefined) {
      i = axis1Keys.length;
      axis1Keys.push(a1);
      axis1Index.set(a1, i);
    }
    let j = axis2Index.get(a2);
    if (j === undefined) {
      j = axis2Keys.length;
      axis2Keys.push(a2);
      axis2Index.set(a2, j);
    }
    if (rawValid !== "0" && rawValid !== "1") {
      throw new Error(`malformed valid flag in sweep CSV row: ${line}`);
    }
    cells.push({
      i,
      j,
      value: rawValue === "nan" ? NaN : Number(rawValue),
      valid: rawValid === "1",
    });
  }

  const n1 = axis1Keys.length;
  const n2 = axis2Keys.length;
  if (cells.length !== n1 * n2) {
    throw new Error(
      `sweep CSV is not a full grid: ${cells.length} rows for ${n1}x${n2}`,
    );
  }

  const values: number[][] = Array.from({ length: n1 }, () =>
    new Array<number>(n2).fill(NaN),
  );
  const valid: boolean[][] = Array.from({ length: n1 }, () =>
    new Array<boolean>(n2).fill(false),
  );
  for (const cell of cells) {
    values[cell.i][cell.j] = cell.value;
    valid[cell.i][cell.j] = cell.valid;
  }

  return {
    grid1: axis1Keys.map(Number),
    grid2: axis2Keys.map(Number),
    values,
    valid,
  };
}
