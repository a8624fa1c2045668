import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

const here = dirname(fileURLToPath(import.meta.url));

export function fixture<T>(name: string): T {
  return JSON.parse(readFileSync(join(here, "fixtures", name), "utf-8")) as T;
}

export interface Row {
  edu: number;
  dim: boolean;
}

const ROW_RE = /<div class="rst-row( dim)?" data-edu="(\d+)"/g;

export function parseRows(html: string): Row[] {
  const rows: Row[] = [];
  for (const match of html.matchAll(ROW_RE)) {
    rows.push({ edu: Number(match[2]), dim: match[1] !== undefined });
  }
  return rows;
}

export function unitsOf(spans: [number, number][]): Set<number> {
  const units = new Set<number>();
  for (const [lo, hi] of spans) {
    for (let e = lo; e <= hi; e += 1) units.add(e);
  }
  return units;
}
