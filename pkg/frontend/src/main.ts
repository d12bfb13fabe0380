// Entry point: restore the session, wire the editors to the preview API,
// and persist every change to local storage.

import { PreviewClient } from "./api.js";
import { CardEditor } from "./card-editor.js";
import { PRESETS } from "./presets.js";
import { ElicitationSession } from "./session.js";
import { WeightWorkbench } from "./weight-workbench.js";

function apiBase(): string {
  const param = new URLSearchParams(window.location.search).get("api");
  return param ?? "";
}

function applyPreset(session: ElicitationSession, criterion: number): void {
  const preset = PRESETS[criterion];
  if (!preset) return;
  session.criterion = criterion;
  session.setLevels(preset.levels, preset.anchorLo, preset.anchorHi);
  preset.gaps.forEach((g, i) => session.setGap(i, g));
}

export function bootstrap(root: Document = document): void {
  const session = ElicitationSession.load(window.localStorage);
  if (session.levels.length === 0) {
    // fresh session: the incidence grid with its references and cards
    applyPreset(session, 0);
    session.setTiers([[0], [2, 3, 4], [1]], [2, 3]);
    session.dirty = false;
  }

  const client = new PreviewClient(apiBase());
  const editorRoot = root.getElementById("card-editor");
  const workbenchRoot = root.getElementById("weight-workbench");
  if (!editorRoot || !workbenchRoot) {
    throw new Error("missing #card-editor / #weight-workbench containers");
  }

  const editor = new CardEditor(editorRoot, session, client);
  const workbench = new WeightWorkbench(workbenchRoot, session, client);
  editor.onResponse = (response) => {
    workbench.elicitedFunction = response.function;
    session.save(window.localStorage);
  };

  const picker = root.getElementById("criterion-picker");
  if (picker instanceof HTMLSelectElement) {
    PRESETS.forEach((preset, i) => {
      const option = root.createElement("option");
      option.value = String(i);
      option.textContent = preset.label;
      picker.appendChild(option);
    });
    picker.value = String(session.criterion);
    picker.addEventListener("change", () => {
      applyPreset(session, Number(picker.value));
      workbench.elicitedFunction = null;
      session.save(window.localStorage);
      void editor.refresh();
    });
  }

  const persist = () => session.save(window.localStorage);
  editorRoot.addEventListener("click", persist);
  workbenchRoot.addEventListener("click", persist);
  workbenchRoot.addEventListener("change", persist);

  void editor.refresh();
  void workbench.refresh();
}

if (typeof document !== "undefined" && document.getElementById("card-editor")) {
  bootstrap();
}
