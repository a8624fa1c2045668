import { describe, expect, it } from "vitest";

import { GENERIC_GLYPH } from "../src/glyphs.js";
import { dimmedUnits, leafRows, renderRst } from "../src/render/rst.js";
import { initialState, toggleGlyph } from "../src/state.js";
import type { RstPayload } from "../src/types.js";
import { fixture, parseRows, unitsOf } from "./helpers.js";

const gold = fixture<RstPayload>("rst_fig2_gold.json");
const serverFig2 = fixture<RstPayload>("rst_fig2_server.json");

function stateWithFilters(payload: RstPayload, ...relations: string[]) {
  let state = initialState();
  const inventory = Object.keys(payload.relation_counts);
  for (const r of relations) {
    state = toggleGlyph(state, r, inventory);
  }
  return state;
}

describe("render_rst on the six-unit gold fixture", () => {
  it("renders six leaf rows in order", () => {
    const rows = leafRows(gold);
    expect(rows.map((r) => r.edu)).toEqual([1, 2, 3, 4, 5, 6]);
  });

  it("matches the baseline snapshot with no filters", () => {
    expect(renderRst(gold, initialState())).toMatchSnapshot();
  });

  it("toggling a glyph dims exactly the server-reported satellite spans", () => {
    for (const relation of Object.keys(gold.satellite_spans)) {
      const html = renderRst(gold, stateWithFilters(gold, relation));
      const expected = unitsOf(gold.satellite_spans[relation]);
      for (const row of parseRows(html)) {
        expect(row.dim, `unit ${row.edu} under ${relation}`).toBe(expected.has(row.edu));
      }
    }
  });

  it("attribution filter dims exactly unit 5", () => {
    const html = renderRst(gold, stateWithFilters(gold, "attribution"));
    const dimmed = parseRows(html).filter((r) => r.dim).map((r) => r.edu);
    expect(dimmed).toEqual([5]);
  });

  it("toggling twice restores the baseline exactly", () => {
    const baseline = renderRst(gold, initialState());
    const twice = stateWithFilters(gold, "elaboration", "elaboration");
    expect(renderRst(gold, twice)).toBe(baseline);
  });

  it("stacked filters dim the union of spans", () => {
    const html = renderRst(gold, stateWithFilters(gold, "attribution", "explanation"));
    const expected = unitsOf([
      ...gold.satellite_spans["attribution"],
      ...gold.satellite_spans["explanation"],
    ]);
    const dimmed = new Set(parseRows(html).filter((r) => r.dim).map((r) => r.edu));
    expect(dimmed).toEqual(expected);
  });

  it("dimmedUnits is a pure function of payload and filters", () => {
    const filters = new Set(["elaboration"]);
    expect(dimmedUnits(gold, filters)).toEqual(dimmedUnits(gold, filters));
  });
});

describe("render_rst on the live server payload", () => {
  it("matches its snapshot", () => {
    expect(renderRst(serverFig2, initialState())).toMatchSnapshot();
  });

  it("elaboration toggle dims the server satellite span", () => {
    const html = renderRst(serverFig2, stateWithFilters(serverFig2, "elaboration"));
    const expected = unitsOf(serverFig2.satellite_spans["elaboration"]);
    const dimmed = new Set(parseRows(html).filter((r) => r.dim).map((r) => r.edu));
    expect(dimmed).toEqual(expected);
  });

  it("unknown relations render the generic marker", () => {
    const payload: RstPayload = {
      ...serverFig2,
      relation_counts: { frobnicate: 1 },
      satellite_spans: { frobnicate: [] },
    };
    const html = renderRst(payload, initialState());
    expect(html).toContain(GENERIC_GLYPH);
  });

  it("filters stay within the relation inventory", () => {
    const state = stateWithFilters(serverFig2, "not-a-relation");
    expect(state.glyphFilters.size).toBe(0);
  });
});
