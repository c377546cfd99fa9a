import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

const here = dirname(fileURLToPath(import.meta.url));

export function fixtureText(name: string): string {
  return readFileSync(join(here, "fixtures", name), "utf-8");
}

export function fixtureJson<T>(name: string): T {
  return JSON.parse(fixtureText(name)) as T;
}

/** Deterministic cell sample: a fixed-stride walk over the grid. */
export function sampleCells(
  n1: number,
  n2: number,
  count: number,
): [number, number][] {
  const total = n1 * n2;
  const cells: [number, number][] = [];
  // stride coprime with the cell count visits distinct cells
  const gcd = (a: number, b: number): number => (b === 0 ? a : gcd(b, a % b));
  let stride = Math.floor(total / count) * 7 + 3;
  while (gcd(stride, total) !== 1) {
    stride += 1;
  }
  let at = 1;
  for (let k = 0; k < count; k++) {
    at = (at + stride) % total;
    cells.push([Math.floor(at / n2), at % n2]);
  }
  return cells;
}
