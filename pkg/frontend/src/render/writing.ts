// Writing area: editor plus the five actions (Prompt, Analyze, New Draft,
// Strategies Tips, Show Reference) and the analyzed view with sentences
// colored by their server-assigned genre.

import { GENRE_COLORS, escapeHtml } from "../glyphs.js";
import type { AnalysisPayload } from "../types.js";
import type { ViewState } from "../state.js";

export function renderColoredSentences(analysis: AnalysisPayload): string {
  const spans = analysis.sentences
    .map((text, i) => {
      const genre = analysis.organization.labels[i];
      return (
        `<span class="draft-sentence" data-genre="${genre}" ` +
        `style="background:${GENRE_COLORS[genre] ?? "#999"}22;border-bottom:2px solid ${GENRE_COLORS[genre] ?? "#999"}">` +
        `${escapeHtml(text)}</span>`
      );
    })
    .join(" ");
  return `<div class="colored-draft">${spans}</div>`;
}

export function renderGuidance(analysis: AnalysisPayload): string {
  const missing = analysis.organization.missing;
  const missingHtml = missing.length
    ? `<p class="missing">missing: ${missing.map(escapeHtml).join(", ")}</p>`
    : "";
  const tips = analysis.guidance
    .map((tip) => `<li class="tip">${escapeHtml(tip)}</li>`)
    .join("");
  return `<div class="guidance">${missingHtml}<ul>${tips}</ul></div>`;
}

export function renderWritingArea(state: ViewState, analysis: AnalysisPayload | null): string {
  const analyzed = analysis === null ? "" : renderColoredSentences(analysis) + renderGuidance(analysis);
  return (
    `<section class="writing-area">` +
    `<textarea id="draft-editor" placeholder="Write your abstract draft here...">` +
    `${escapeHtml(state.draftText)}</textarea>` +
    `<div class="actions">` +
    `<button id="btn-prompt">Prompt</button>` +
    `<button id="btn-analyze">Analyze</button>` +
    `<button id="btn-new-draft">New Draft</button>` +
    `<button id="btn-strategies">Strategies Tips</button>` +
    `<button id="btn-reference">${state.referenceVisible ? "Hide" : "Show"} Reference</button>` +
    `</div>${analyzed}</section>`
  );
}
