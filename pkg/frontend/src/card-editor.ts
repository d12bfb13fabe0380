// Card editor: ordered level chips with blank-card tokens in the gaps.
// Every edit posts the judgements to /preview/scale and redraws the value
// ladder and function plot from the response; consistency violations from
// expert-filled entries render inline at the offending gap. Network
// failures show a banner and leave the session untouched.

import type { PreviewClient } from "./api.js";
import { isConsistencyViolation } from "./api.js";
import type { ElicitationSession } from "./session.js";
import type { ConsistencyViolation, ScaleResponse } from "./types.js";
import { plotGeometry, scaleView, violationBadges } from "./viewmodel.js";

export class CardEditor {
  lastResponse: ScaleResponse | null = null;
  lastViolations: ConsistencyViolation[] = [];
  lastError = "";
  onResponse: ((response: ScaleResponse) => void) | null = null;

  constructor(
    private readonly root: HTMLElement,
    private readonly session: ElicitationSession,
    private readonly client: PreviewClient,
  ) {}

  async refresh(): Promise<void> {
    const violations = this.session.scaleViolations();
    if (violations.length > 0) {
      this.lastError = violations.join("; ");
      this.render();
      return;
    }
    const result = await this.client.previewScale(this.session.scalePayload());
    if (result.ok) {
      this.lastResponse = result.data;
      this.lastViolations = [];
      this.lastError = "";
      this.onResponse?.(result.data);
    } else if (result.status === 422) {
      this.lastViolations = result.violations.filter(isConsistencyViolation);
      this.lastError = "";
    } else {
      // session state is preserved; only the banner changes
      this.lastError = result.status === 0
        ? `network failure: ${result.message}`
        : `server rejected the judgements (${result.status})`;
    }
    this.render();
  }

  private token(count: number): string {
    return count === 0 ? "—" : "●".repeat(Math.min(count, 15)) +
      (count > 15 ? ` ×${count}` : "");
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

    const strip = doc.createElement("div");
    strip.className = "card-strip";
    const badges = violationBadges(this.lastViolations);
    s.levels.forEach((level, i) => {
      const chip = doc.createElement("span");
      chip.className = "level-chip";
      if (i === s.anchorLo.index || i === s.anchorHi.index) {
        chip.classList.add("anchor");
        chip.title = i === s.anchorLo.index
          ? `reference level, value ${s.anchorLo.value}`
          : `reference level, value ${s.anchorHi.value}`;
      }
      chip.textContent = String(level);
      strip.appendChild(chip);

      if (i < s.gaps.length) {
        const gap = doc.createElement("span");
        gap.className = "gap";
        gap.dataset.gapIndex = String(i);

        const minus = doc.createElement("button");
        minus.textContent = "−";
        minus.className = "card-minus";
        minus.addEventListener("click", () => {
          s.removeCard(i);
          void this.refresh();
        });
        const tokens = doc.createElement("span");
        tokens.className = "tokens";
        tokens.textContent = this.token(s.gaps[i] ?? 0);
        const plus = doc.createElement("button");
        plus.textContent = "+";
        plus.className = "card-plus";
        plus.addEventListener("click", () => {
          s.addCard(i);
          void this.refresh();
        });

        gap.append(minus, tokens, plus);
        for (const badge of badges.filter((b) => b.gapIndex === i)) {
          const el = doc.createElement("span");
          el.className = "violation-badge";
          el.textContent = badge.text;
          gap.appendChild(el);
        }
        strip.appendChild(gap);
      }
    });
    this.root.appendChild(strip);

    const clear = doc.createElement("button");
    clear.className = "clear-cards";
    clear.textContent = "remove all cards";
    clear.addEventListener("click", () => {
      s.gaps = s.gaps.map(() => 0);
      s.dirty = true;
      void this.refresh();
    });
    this.root.appendChild(clear);

    if (this.lastResponse) {
      const view = scaleView(s.levels, this.lastResponse);
      const ladder = doc.createElement("table");
      ladder.className = "value-ladder";
      const head = doc.createElement("tr");
      head.innerHTML = "<th>level</th><th>value</th>";
      ladder.appendChild(head);
      for (const row of view.levelValues) {
        const tr = doc.createElement("tr");
        const tdLevel = doc.createElement("td");
        tdLevel.textContent = row.level;
        const tdValue = doc.createElement("td");
        tdValue.className = "scale-value";
        tdValue.textContent = row.value;
        tr.append(tdLevel, tdValue);
        ladder.appendChild(tr);
      }
      this.root.appendChild(ladder);

      const meta = doc.createElement("p");
      meta.className = "scale-meta";
      meta.textContent =
        `unit value ${view.unitValue} (${view.unitCount} units between the ` +
        `references); saturation from ${view.capOnset}`;
      this.root.appendChild(meta);

      const geometry = plotGeometry(this.lastResponse.function);
      const svgNs = "http://www.w3.org/2000/svg";
      const svg = doc.createElementNS(svgNs, "svg");
      svg.setAttribute("class", "function-plot");
      svg.setAttribute("viewBox", `0 0 ${geometry.width} ${geometry.height}`);
      const capLine = doc.createElementNS(svgNs, "line");
      capLine.setAttribute("x1", "0");
      capLine.setAttribute("x2", String(geometry.width));
      capLine.setAttribute("y1", String(geometry.capLineY));
      capLine.setAttribute("y2", String(geometry.capLineY));
      capLine.setAttribute("class", "cap-line");
      svg.appendChild(capLine);
      const line = doc.createElementNS(svgNs, "polyline");
      line.setAttribute("points", geometry.points);
      line.setAttribute("class", "function-line");
      line.setAttribute("fill", "none");
      svg.appendChild(line);
      for (const node of geometry.nodes) {
        const dot = doc.createElementNS(svgNs, "circle");
        dot.setAttribute("cx", String(node.x));
        dot.setAttribute("cy", String(node.y));
        dot.setAttribute("r", "3");
        dot.setAttribute("class", "breakpoint");
        svg.appendChild(dot);
      }
      this.root.appendChild(svg);
    }
  }
}
