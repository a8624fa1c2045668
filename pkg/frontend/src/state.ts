// ViewState: everything the renderers need beyond the server payloads.
// Transitions return new state objects; renders are pure in (payload, state).

export interface ViewState {
  projectId: string | null;
  draftText: string;
  glyphFilters: ReadonlySet<string>; // relations whose satellites are dimmed
  hoverTarget: number | null; // abstract sentence index in the flow map
  k: number;
  referenceVisible: boolean;
}

export function initialState(): ViewState {
  return {
    projectId: null,
    draftText: "",
    glyphFilters: new Set(),
    hoverTarget: null,
    k: 3,
    referenceVisible: false,
  };
}

export function toggleGlyph(
  state: ViewState,
  relation: string,
  inventory: Iterable<string>,
): ViewState {
  if (![...inventory].includes(relation)) {
    return state; // filters stay a subset of the relation inventory
  }
  const filters = new Set(state.glyphFilters);
  if (filters.has(relation)) {
    filters.delete(relation);
  } else {
    filters.add(relation);
  }
  return { ...state, glyphFilters: filters };
}

export function setHover(state: ViewState, target: number | null): ViewState {
  return { ...state, hoverTarget: target };
}

export function setK(state: ViewState, k: number): ViewState {
  return { ...state, k: Math.max(1, Math.floor(k)) };
}

export function showReference(state: ViewState, visible: boolean): ViewState {
  return { ...state, referenceVisible: visible };
}

export function newDraft(state: ViewState): ViewState {
  // starting a new draft hides the reference panel
  return { ...state, draftText: "", referenceVisible: false, hoverTarget: null };
}
