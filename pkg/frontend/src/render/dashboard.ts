// Evaluation dashboard: organization tile rows (oldest analysis at the top),
// overall-score line chart, five-axis radar, per-sentence facet bars.

import { FACET_ORDER, GENRE_COLORS, GENRE_ORDER, escapeHtml } from "../glyphs.js";
import type { AnalysisPayload, HistoryPayload } from "../types.js";

export function renderLegend(): string {
  const items = GENRE_ORDER.map(
    (g) =>
      `<span class="legend-item"><span class="tile" style="background:${GENRE_COLORS[g]}"></span>${g}</span>`,
  ).join("");
  return `<div class="genre-legend">${items}</div>`;
}

export function renderOrganizationRows(history: HistoryPayload): string {
  const rows = history.rows
    .map((labels, i) => {
      const tiles = labels
        .map(
          (g, j) =>
            `<span class="tile" data-genre="${g}" data-sentence="${j}" ` +
            `style="background:${GENRE_COLORS[g] ?? "#999"}" title="${j + 1}: ${g}"></span>`,
        )
        .join("");
      return `<div class="org-row" data-analysis="${i}">${tiles}</div>`;
    })
    .join("");
  return `<div class="org-rows">${rows}</div>`;
}

export function renderScoreLine(history: HistoryPayload): string {
  const points = history.series
    .map((v, i) => ({ v, i }))
    .filter((p): p is { v: number; i: number } => p.v !== null);
  if (points.length === 0) return `<svg class="score-line" viewBox="0 0 100 40"></svg>`;
  const n = Math.max(points.length - 1, 1);
  const coords = points
    .map((p, idx) => `${(100 * idx) / n},${40 - (p.v / 7) * 36 - 2}`)
    .join(" ");
  const dots = points
    .map(
      (p, idx) =>
        `<circle cx="${(100 * idx) / n}" cy="${40 - (p.v / 7) * 36 - 2}" r="1.5">` +
        `<title>draft analysis ${p.i + 1}: ${p.v.toFixed(2)}</title></circle>`,
    )
    .join("");
  return (
    `<svg class="score-line" viewBox="0 0 100 40" preserveAspectRatio="none">` +
    `<polyline points="${coords}" fill="none"></polyline>${dots}</svg>`
  );
}

export function renderRadar(analysis: AnalysisPayload): string {
  const cx = 50;
  const cy = 50;
  const r = 40;
  const axes: string[] = [];
  const vertices: string[] = [];
  FACET_ORDER.forEach((facet, i) => {
    const angle = -Math.PI / 2 + (2 * Math.PI * i) / FACET_ORDER.length;
    const x = cx + r * Math.cos(angle);
    const y = cy + r * Math.sin(angle);
    axes.push(
      `<line class="radar-axis" data-facet="${facet}" x1="${cx}" y1="${cy}" ` +
        `x2="${x.toFixed(2)}" y2="${y.toFixed(2)}"></line>`,
    );
    const value = analysis.facets[facet];
    const rho = value === null ? 0 : (value / 7) * r;
    const vx = cx + rho * Math.cos(angle);
    const vy = cy + rho * Math.sin(angle);
    vertices.push(`${vx.toFixed(2)},${vy.toFixed(2)}`);
  });
  return (
    `<svg class="radar" viewBox="0 0 100 100">` +
    axes.join("") +
    `<polygon class="radar-shape" points="${vertices.join(" ")}"></polygon></svg>`
  );
}

export function renderSentenceBars(analysis: AnalysisPayload): string {
  const rows = FACET_ORDER.map((facet) => {
    const bars = analysis.per_sentence
      .map((scores, j) => {
        const value = scores[facet];
        const height = value === null ? 0 : (value / 7) * 100;
        const label = value === null ? "undefined" : value.toFixed(2);
        return (
          `<span class="bar" data-sentence="${j}" style="height:${height.toFixed(1)}%"` +
          ` title="sentence ${j + 1}: ${label}"></span>`
        );
      })
      .join("");
    return (
      `<div class="facet-bar-row" data-facet="${facet}">` +
      `<span class="facet-name">${facet}</span><span class="bar-group">${bars}</span></div>`
    );
  }).join("");
  return `<div class="sentence-bars">${rows}</div>`;
}

export function renderDashboard(
  history: HistoryPayload,
  analysis: AnalysisPayload | null,
): string {
  if (history.rows.length === 0 || analysis === null) {
    return (
      `<section class="dashboard empty-state">` +
      `<p>No analyses yet. Write a draft and press Analyze.</p></section>`
    );
  }
  const overall = analysis.overall === null ? "n/a" : analysis.overall.toFixed(2);
  return (
    `<section class="dashboard">` +
    renderLegend() +
    renderOrganizationRows(history) +
    renderScoreLine(history) +
    `<div class="overall">overall: ${escapeHtml(overall)}</div>` +
    renderRadar(analysis) +
    renderSentenceBars(analysis) +
    `</section>`
  );
}
