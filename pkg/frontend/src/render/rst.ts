// Rhetorical structure view: flattened indented tree with relation glyphs,
// a relation-count bar, per-paragraph intensity chips, and glyph toggles
// that dim exactly the satellite spans the server reported.

import { GENERIC_GLYPH, RELATION_GLYPHS, escapeHtml, relationGlyph } from "../glyphs.js";
import type { RstPayload, RstTreeNode } from "../types.js";
import type { ViewState } from "../state.js";

interface LeafRow {
  edu: number;
  text: string;
  depth: number;
  glyphs: string[]; // relations whose internal node opens at this leaf
}

function flatten(node: RstTreeNode, depth: number, opening: string[], rows: LeafRow[]): void {
  if (node.kind === "leaf") {
    rows.push({
      edu: node.edu,
      text: node.text ?? `unit ${node.edu}`,
      depth,
      glyphs: opening,
    });
    return;
  }
  flatten(node.children[0], depth + 1, opening, rows);
  flatten(node.children[1], depth + 1, [node.relation], rows);
}

export function leafRows(payload: RstPayload): LeafRow[] {
  const rows: LeafRow[] = [];
  flatten(payload.tree, 0, [], rows);
  return rows;
}

export function dimmedUnits(payload: RstPayload, filters: ReadonlySet<string>): Set<number> {
  const dimmed = new Set<number>();
  for (const relation of filters) {
    for (const [lo, hi] of payload.satellite_spans[relation] ?? []) {
      for (let edu = lo; edu <= hi; edu += 1) {
        dimmed.add(edu);
      }
    }
  }
  return dimmed;
}

const warnedRelations = new Set<string>();

function glyphWithFallback(relation: string): string {
  if (!(relation in RELATION_GLYPHS) && !warnedRelations.has(relation)) {
    warnedRelations.add(relation);
    console.warn(`no glyph for relation "${relation}"; using generic marker`);
  }
  return relationGlyph(relation);
}

function countBar(counts: Record<string, number>, filters: ReadonlySet<string>): string {
  const entries = Object.entries(counts).sort(([a], [b]) => a.localeCompare(b));
  const segments = entries
    .map(([relation, count]) => {
      const active = filters.has(relation) ? " active" : "";
      return (
        `<button class="glyph-toggle${active}" data-relation="${escapeHtml(relation)}"` +
        ` style="flex-grow:${count}" title="${escapeHtml(relation)}: ${count}">` +
        `${glyphWithFallback(relation)}&nbsp;${count}</button>`
      );
    })
    .join("");
  return `<div class="relation-bar">${segments}</div>`;
}

function paragraphChips(perParagraph: Record<string, number>[]): string {
  if (perParagraph.length === 0) return "";
  const totals = perParagraph.map((counts) =>
    Object.values(counts).reduce((a, b) => a + b, 0),
  );
  const max = Math.max(1, ...totals);
  const chips = totals
    .map((total, i) => {
      const level = Math.round((4 * total) / max);
      return `<span class="para-chip intensity-${level}" title="paragraph ${i + 1}: ${total} relations">${i + 1}</span>`;
    })
    .join("");
  return `<div class="para-chips">${chips}</div>`;
}

export function renderRst(payload: RstPayload, state: ViewState): string {
  const rows = leafRows(payload);
  const dimmed = dimmedUnits(payload, state.glyphFilters);
  const body = rows
    .map((row) => {
      const glyphs = row.glyphs.map(glyphWithFallback).join("");
      const dim = dimmed.has(row.edu) ? " dim" : "";
      return (
        `<div class="rst-row${dim}" data-edu="${row.edu}" style="--depth:${row.depth}">` +
        `<span class="rst-glyph">${glyphs || "&nbsp;"}</span>` +
        `<span class="rst-text">${escapeHtml(row.text)}</span></div>`
      );
    })
    .join("");
  return (
    `<section class="rst-view">` +
    countBar(payload.relation_counts, state.glyphFilters) +
    paragraphChips(payload.paragraph_relation_counts) +
    `<div class="rst-rows">${body}</div></section>`
  );
}
