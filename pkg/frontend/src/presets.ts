// Starting grids for each criterion: the level discretisation and the
// card counts the default model was elicited with. Loading a preset only
// seeds the session; the server still computes every value.

import type { AnchorRef } from "./types.js";

export interface CriterionPreset {
  label: string;
  levels: number[];
  anchorLo: AnchorRef;
  anchorHi: AnchorRef;
  gaps: number[];
}

export const PRESETS: CriterionPreset[] = [
  {
    label: "incidence (cases/day)",
    levels: [0, 225, 450, 675, 900, 1125, 1350, 1575],
    anchorLo: { index: 0, value: 0 },
    anchorHi: { index: 5, value: 100 },
    gaps: [0, 2, 4, 6, 8, 10, 13],
  },
  {
    label: "transmission (growth ratio)",
    levels: [0, 0.92, 0.94, 0.96, 0.98, 1.0, 1.02, 1.04],
    anchorLo: { index: 0, value: 0 },
    anchorHi: { index: 5, value: 100 },
    gaps: [0, 2, 4, 6, 8, 10, 12],
  },
  {
    // equal cards in every gap make this scale linear; any equal count
    // produces the same values, so the preset starts with none placed
    label: "lethality (%)",
    levels: [0, 0.9, 1.8, 2.7, 3.6, 4.5, 5.4, 6.3, 7.2],
    anchorLo: { index: 0, value: 0 },
    anchorHi: { index: 4, value: 100 },
    gaps: [0, 0, 0, 0, 0, 0, 0, 0],
  },
  {
    label: "ward occupancy (beds)",
    levels: [0, 500, 1000, 1500, 2000, 2500, 3000, 3500],
    anchorLo: { index: 0, value: 0 },
    anchorHi: { index: 5, value: 100 },
    gaps: [0, 2, 4, 6, 8, 10, 12],
  },
  {
    label: "ICU occupancy (beds)",
    levels: [0, 40, 80, 120, 160, 200, 240, 280],
    anchorLo: { index: 0, value: 0 },
    anchorHi: { index: 5, value: 100 },
    gaps: [0, 2, 4, 6, 8, 10, 12],
  },
];
