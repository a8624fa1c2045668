// Browser bootstrap: binds the controller to the static page served by
// `draftcoach serve --ui-dir`.

import { Api } from "./api.js";
import { Controller, Panes } from "./controller.js";

function byId<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
}

function paint(panes: Panes): void {
  if (panes.rst !== undefined) byId("pane-rst").innerHTML = panes.rst;
  if (panes.writing !== undefined) byId("pane-writing").innerHTML = panes.writing;
  if (panes.dashboard !== undefined) byId("pane-dashboard").innerHTML = panes.dashboard;
  if (panes.flowmap !== undefined) byId("pane-flowmap").innerHTML = panes.flowmap;
}

const controller = new Controller(new Api(""), paint);

function wireEvents(): void {
  byId<HTMLButtonElement>("btn-open").addEventListener("click", async () => {
    const source = byId<HTMLTextAreaElement>("source-input").value;
    const reference = byId<HTMLTextAreaElement>("reference-input").value;
    if (!source.trim()) return;
    await controller.openProject(source, reference.trim() || undefined);
    byId("setup-panel").classList.add("hidden");
  });

  document.body.addEventListener("click", async (ev) => {
    const target = ev.target as HTMLElement;
    const toggle = target.closest<HTMLElement>(".glyph-toggle");
    if (toggle?.dataset.relation) {
      controller.onGlyphToggle(toggle.dataset.relation);
      return;
    }
    switch (target.id) {
      case "btn-prompt":
        await controller.onPrompt();
        break;
      case "btn-analyze":
        syncDraftText();
        await controller.onAnalyze();
        break;
      case "btn-new-draft":
        controller.onNewDraft();
        break;
      case "btn-strategies":
        alert(await controller.onStrategies());
        break;
      case "btn-reference":
        await controller.onShowReference();
        break;
    }
  });

  document.body.addEventListener("input", async (ev) => {
    const target = ev.target as HTMLElement;
    if (target.id === "k-slider") {
      await controller.onKChange(Number((target as HTMLInputElement).value));
    }
  });

  document.body.addEventListener("mouseover", (ev) => {
    const tile = (ev.target as HTMLElement).closest<HTMLElement>(".abs-tile");
    if (tile?.dataset.abstract !== undefined) {
      controller.onHover(Number(tile.dataset.abstract));
    }
  });
  document.body.addEventListener("mouseout", (ev) => {
    if ((ev.target as HTMLElement).closest(".abs-tile")) {
      controller.onHover(null);
    }
  });
}

function syncDraftText(): void {
  const editor = document.getElementById("draft-editor") as HTMLTextAreaElement | null;
  if (editor) controller.setDraftText(editor.value);
}

wireEvents();
