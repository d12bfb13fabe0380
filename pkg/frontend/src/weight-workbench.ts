// Weight workbench: rank the five swing situations into tiers (ties
// allowed), insert gap cards between tiers, set the top/bottom ratio, and
// watch the normalised weights update from /preview/weights. Export
// merges the elicited function, the committed weights, and the current
// cut-offs into a config document, downloads it, and can push it to the
// server with PUT /config.

import type { PreviewClient } from "./api.js";
import { buildConfigExport, downloadConfig } from "./export.js";
import type { ElicitationSession } from "./session.js";
import type { FunctionDoc, WeightsResponse } from "./types.js";
import { weightsView } from "./viewmodel.js";

const SWING_LABELS = [
  "incidence swing",
  "transmission swing",
  "lethality swing",
  "wards swing",
  "icu swing",
];

export class WeightWorkbench {
  lastResponse: WeightsResponse | null = null;
  lastError = "";
  statusMessage = "";
  elicitedFunction: FunctionDoc | null = null;

  constructor(
    private readonly root: HTMLElement,
    private readonly session: ElicitationSession,
    private readonly client: PreviewClient,
  ) {}

  async refresh(): Promise<void> {
    const violations = this.session.rankingViolations();
    if (violations.length > 0) {
      // z <= 1 with several tiers (and friends) are blocked client-side
      // with the explanation; nothing is submitted
      this.lastError = violations.join("; ");
      this.render();
      return;
    }
    const result = await this.client.previewWeights(this.session.rankingPayload());
    if (result.ok) {
      this.lastResponse = result.data;
      this.lastError = "";
    } else {
      this.lastError = result.status === 0
        ? `network failure: ${result.message}`
        : `server rejected the ranking (${result.status})`;
    }
    this.render();
  }

  async exportConfig(push: boolean): Promise<void> {
    const base = await this.client.getConfig();
    if (!base.ok) {
      this.statusMessage = `could not fetch the base config: ${base.message}`;
      this.render();
      return;
    }
    const weights =
      this.session.committedWeights ?? this.lastResponse?.weights ?? null;
    if (!weights) {
      this.statusMessage = "preview the weights before exporting";
      this.render();
      return;
    }
    const doc = buildConfigExport(
      base.data,
      this.elicitedFunction,
      this.session.criterion,
      weights,
    );
    downloadConfig(doc, this.root.ownerDocument);
    if (push) {
      const put = await this.client.putConfig(doc);
      this.statusMessage = put.ok
        ? `committed config ${put.data.digest}`
        : `server rejected the config: ${JSON.stringify(put.violations)}`;
    } else {
      this.statusMessage = "config downloaded";
    }
    this.render();
  }

  render(): void {
    const s = this.session;
    const doc = this.root.ownerDocument;
    this.root.textContent = "";

    if (this.lastError) {
      const banner = doc.createElement("div");
      banner.className = "banner error";
      banner.textContent = this.lastError;
      this.root.appendChild(banner);
    }
    if (this.statusMessage) {
      const banner = doc.createElement("div");
      banner.className = "banner status";
      banner.textContent = this.statusMessage;
      this.root.appendChild(banner);
    }

    const board = doc.createElement("div");
    board.className = "tier-board";
    s.tiers.forEach((tier, t) => {
      const column = doc.createElement("div");
      column.className = "tier";
      column.dataset.tier = String(t);
      const title = doc.createElement("h4");
      title.textContent = t === 0 ? "highest impact" : `tier ${t + 1}`;
      column.appendChild(title);
      for (const criterion of tier) {
        const chip = doc.createElement("div");
        chip.className = "swing-chip";
        chip.draggable = true;
        chip.dataset.criterion = String(criterion);
        chip.textContent = SWING_LABELS[criterion] ?? `swing ${criterion}`;
        chip.addEventListener("dragstart", (event) => {
          event.dataTransfer?.setData("text/plain", String(criterion));
        });
        const up = doc.createElement("button");
        up.textContent = "↑";
        up.title = "move to the tier above (new tier at the top)";
        up.addEventListener("click", () => {
          if (t === 0) {
            if (tier.length > 1) {
              // splitting the top tier: fresh leading tier of its own
              s.setTiers([[criterion], ...stripOf(s.tiers, criterion)], [0, ...s.tierGaps]);
            }
          } else {
            s.moveCriterion(criterion, t - 1);
          }
          void this.refresh();
        });
        const down = doc.createElement("button");
        down.textContent = "↓";
        down.title = "move to the tier below (new tier at the bottom)";
        down.addEventListener("click", () => {
          s.moveCriterion(criterion, t + 1);
          void this.refresh();
        });
        chip.append(" ", up, down);
        column.appendChild(chip);
      }
      column.addEventListener("dragover", (event) => event.preventDefault());
      column.addEventListener("drop", (event) => {
        event.preventDefault();
        const moved = Number(event.dataTransfer?.getData("text/plain"));
        if (Number.isInteger(moved)) {
          s.moveCriterion(moved, t);
          void this.refresh();
        }
      });
      board.appendChild(column);

      if (t < s.tierGaps.length) {
        const gap = doc.createElement("div");
        gap.className = "tier-gap";
        const minus = doc.createElement("button");
        minus.textContent = "−";
        minus.addEventListener("click", () => {
          s.setTierGap(t, (s.tierGaps[t] ?? 0) - 1);
          void this.refresh();
        });
        const count = doc.createElement("span");
        count.textContent = `${s.tierGaps[t]} card(s)`;
        const plus = doc.createElement("button");
        plus.textContent = "+";
        plus.addEventListener("click", () => {
          s.setTierGap(t, (s.tierGaps[t] ?? 0) + 1);
          void this.refresh();
        });
        gap.append(minus, count, plus);
        board.appendChild(gap);
      }
    });
    this.root.appendChild(board);

    const zRow = doc.createElement("div");
    zRow.className = "z-row";
    const zLabel = doc.createElement("label");
    zLabel.textContent = "top/bottom weight ratio (z): ";
    const zInput = doc.createElement("input");
    zInput.type = "range";
    zInput.min = "1";
    zInput.max = "10";
    zInput.step = "0.05";
    zInput.value = String(s.z);
    zInput.className = "z-slider";
    const zValue = doc.createElement("input");
    zValue.type = "number";
    zValue.step = "0.01";
    zValue.value = String(s.z);
    zValue.className = "z-value";
    const applyZ = (raw: string) => {
      const z = Number(raw);
      if (Number.isFinite(z)) {
        s.setZ(z);
        void this.refresh();
      }
    };
    zInput.addEventListener("change", () => applyZ(zInput.value));
    zValue.addEventListener("change", () => applyZ(zValue.value));
    zLabel.append(zInput, zValue);
    zRow.appendChild(zLabel);
    this.root.appendChild(zRow);

    if (this.lastResponse) {
      const view = weightsView(this.lastResponse);
      const table = doc.createElement("table");
      table.className = "weights-table";
      const head = doc.createElement("tr");
      head.innerHTML = "<th>criterion</th><th>weight</th><th>committed</th>";
      table.appendChild(head);
      view.byCriterion.forEach((row, i) => {
        const tr = doc.createElement("tr");
        const name = doc.createElement("td");
        name.textContent = row.criterion;
        const weight = doc.createElement("td");
        weight.className = "weight-value";
        weight.textContent = row.weight;
        const committed = doc.createElement("td");
        const input = doc.createElement("input");
        input.type = "number";
        input.step = "0.001";
        input.className = "committed-weight";
        input.value = String(
          s.committedWeights?.[i] ?? this.lastResponse!.weights[i],
        );
        input.addEventListener("change", () => {
          const current =
            s.committedWeights ?? [...this.lastResponse!.weights];
          current[i] = Number(input.value);
          s.setCommittedWeights(current);
        });
        committed.appendChild(input);
        tr.append(name, weight, committed);
        table.appendChild(tr);
      });
      this.root.appendChild(table);

      const note = doc.createElement("p");
      note.className = "committed-note";
      note.textContent =
        "committed weights prefill from the preview and may be adjusted " +
        "before export (they must still sum to 1)";
      this.root.appendChild(note);
    }

    const actions = doc.createElement("div");
    actions.className = "export-actions";
    const download = doc.createElement("button");
    download.className = "export-download";
    download.textContent = "export config";
    download.addEventListener("click", () => void this.exportConfig(false));
    const commit = doc.createElement("button");
    commit.className = "export-commit";
    commit.textContent = "export + commit to server";
    commit.addEventListener("click", () => void this.exportConfig(true));
    actions.append(download, commit);
    this.root.appendChild(actions);
  }
}

function stripOf(tiers: number[][], criterion: number): number[][] {
  return tiers
    .map((tier) => tier.filter((c) => c !== criterion))
    .filter((tier) => tier.length > 0);
}
