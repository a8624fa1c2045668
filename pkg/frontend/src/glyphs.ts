// Visual encodings. Five bespoke glyphs for the glyphed relations; anything
// else renders as the generic marker and is logged once by the caller.

export const RELATION_GLYPHS: Record<string, string> = {
  background: "▤",
  contrast: "⇄",
  elaboration: "⊕",
  joint: "∥",
  sequence: "→",
};

export const GENERIC_GLYPH = "◦";

export function relationGlyph(relation: string): string {
  return RELATION_GLYPHS[relation] ?? GENERIC_GLYPH;
}

// Color-blind-safe five-hue palette (Okabe-Ito subset), one hue per genre.
export const GENRE_COLORS: Record<string, string> = {
  background: "#0072B2",
  objective: "#E69F00",
  method: "#009E73",
  result: "#CC79A7",
  conclusion: "#56B4E9",
};

export const GENRE_ORDER = [
  "background",
  "objective",
  "method",
  "result",
  "conclusion",
] as const;

export const FACET_ORDER = [
  "understandability",
  "consistency",
  "fluency",
  "diversity",
  "conciseness",
] as const;

export function escapeHtml(s: string): string {
  return s.replace(/[&<>"']/g, (m) => (
    { "&": "&amp;", "<": "&lt;", ">": "&gt;", '"': "&quot;", "'": "&#39;" }[m]!
  ));
}
