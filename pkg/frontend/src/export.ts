// Config export: merge the elicited value function and the committed
// weights into the server's current configuration. The merged document is
// exactly what PUT /config validates; nothing is recomputed locally.

import type { ConfigDoc, FunctionDoc } from "./types.js";

export function buildConfigExport(
  base: ConfigDoc,
  elicited: FunctionDoc | null,
  criterion: number,
  weights: number[] | null,
  name = "elicited",
): ConfigDoc {
  const functions = base.value_functions.map((fn, i) => {
    if (elicited !== null && i === criterion) {
      return { ...elicited, name: fn.name };
    }
    return { ...fn };
  });
  return {
    schema: base.schema,
    metadata: { ...base.metadata, name },
    value_functions: functions,
    weights: weights ? [...weights] : [...base.weights],
    state_scale: {
      cutoffs: base.state_scale.cutoffs.map((c) => [...c] as [number, string, string]),
      hysteresis: base.state_scale.hysteresis,
    },
  };
}

export function configFilename(doc: ConfigDoc): string {
  return `${doc.metadata.name || "config"}.json`;
}

export function serializeConfig(doc: ConfigDoc): string {
  return JSON.stringify(doc, null, 2) + "\n";
}

/** Trigger a browser download of the exported document. */
export function downloadConfig(doc: ConfigDoc, doc_: Document = document): void {
  const blob = new Blob([serializeConfig(doc)], { type: "application/json" });
  const url = URL.createObjectURL(blob);
  const a = doc_.createElement("a");
  a.href = url;
  a.download = configFilename(doc);
  doc_.body.appendChild(a);
  a.click();
  a.remove();
  URL.revokeObjectURL(url);
}
