// Reference abstract with flow map: abstract tiles (intensity from the
// payload), source tiles repainted by the hovered row's scores, and exactly
// k link elements to the hovered row's top-k source sentences.

import { GENRE_COLORS, escapeHtml } from "../glyphs.js";
import type { ReferencePayload } from "../types.js";
import type { ViewState } from "../state.js";

function clamp01(x: number): number {
  return Math.min(1, Math.max(0, x));
}

export function renderFlowmap(payload: ReferencePayload, state: ViewState): string {
  const { alignment, organization } = payload;
  const hover = state.hoverTarget;

  const abstractTiles = payload.sentences
    .map((text, i) => {
      const genre = organization.labels[i];
      const intensity = clamp01(alignment.intensity[i]);
      const hovered = hover === i ? " hovered" : "";
      return (
        `<div class="abs-tile${hovered}" data-abstract="${i}" ` +
        `style="--intensity:${intensity.toFixed(4)};--genre-color:${GENRE_COLORS[genre] ?? "#999"}" ` +
        `title="${escapeHtml(text)}"><span class="genre-chip">${genre}</span>` +
        `<span class="tile-text">${escapeHtml(text)}</span></div>`
      );
    })
    .join("");

  const row = hover === null ? null : alignment.sim[hover];
  const sourceTiles = payload.source_sentences
    .map((text, j) => {
      const score = row === null ? 0 : clamp01(row[j]);
      const linked = hover !== null && alignment.topk_idx[hover].includes(j);
      return (
        `<div class="src-tile${linked ? " linked" : ""}" data-source="${j}" ` +
        `style="--score:${score.toFixed(4)}" title="${escapeHtml(text)}"></div>`
      );
    })
    .join("");

  const links =
    hover === null
      ? ""
      : alignment.topk_idx[hover]
          .map(
            (j) =>
              `<div class="flow-link" data-from="${hover}" data-to="${j}" ` +
              `title="abstract ${hover + 1} -> source ${j + 1}"></div>`,
          )
          .join("");

  return (
    `<section class="flowmap" data-k="${alignment.k}">` +
    `<div class="k-control"><label>k <input type="range" id="k-slider" min="1" ` +
    `max="${payload.source_sentences.length}" value="${alignment.k}"></label>` +
    `<span class="k-value">${alignment.k}</span></div>` +
    `<div class="flow-columns"><div class="abs-column">${abstractTiles}</div>` +
    `<div class="flow-links">${links}</div>` +
    `<div class="src-column">${sourceTiles}</div></div></section>`
  );
}
