import { ApiClient, ApiError } from "./api.js";
import { fixed, intervalText, residualMass, validateComponents } from "./format.js";
import {
  ComponentRow,
  ProblemDocument,
  SolutionDocument,
  WeightBlock,
} from "./types.js";

export interface AppOptions {
  api: ApiClient;
  alternatives: string[];
  /** Debounce for slider-driven refreshes; 250 ms unless a test shrinks it. */
  debounceMs?: number;
  lambdaMax?: number;
}

const PRESETS = ["high", "medium", "low"] as const;

/**
 * Thin-client elicitation view: every displayed number comes from a served
 * solution document; the only local arithmetic is form-state mirroring
 * (residual mass, inline validity) and display rounding.
 */
export class App {
  readonly root: HTMLElement;
  readonly api: ApiClient;
  readonly alternatives: string[];
  sessionId: string | null = null;
  solution: SolutionDocument | null = null;
  customLambda: number | null = null;

  private readonly debounceMs: number;
  private readonly lambdaMax: number;
  private doc: ProblemDocument;
  private readonly touched = new Set<number>();
  private readonly dirty = new Set<number>();
  private timer: ReturnType<typeof setTimeout> | null = null;
  private queue: Promise<void> = Promise.resolve();

  constructor(root: HTMLElement, options: AppOptions) {
    this.root = root;
    this.api = options.api;
    this.alternatives = [...options.alternatives];
    this.debounceMs = options.debounceMs ?? 250;
    this.lambdaMax = options.lambdaMax ?? 16;
    this.doc = {
      version: 1,
      alternatives: [...this.alternatives],
      comparisons: this.alternatives.slice(0, -1).map((_, k) => ({
        left: k + 1,
        right: k + 2,
        components: [{ b: 0.5, v: 1.0 }],
      })),
    };
  }

  /** Open the session, push the (empty) draft, and render both panels. */
  async start(): Promise<void> {
    this.sessionId = await this.api.createSession();
    await this.api.putProblem(this.sessionId, {
      version: 1,
      alternatives: [...this.alternatives],
      comparisons: [],
    });
    this.render();
  }

  /** Current client draft, as it would be submitted. */
  problemDocument(): ProblemDocument {
    return JSON.parse(JSON.stringify(this.doc)) as ProblemDocument;
  }

  /** Populate the form from a served document and submit it unchanged. */
  async loadProblem(doc: ProblemDocument): Promise<void> {
    this.doc = JSON.parse(JSON.stringify(doc)) as ProblemDocument;
    for (const comparison of this.doc.comparisons) {
      this.touched.add(comparison.left);
    }
    this.render();
    if (this.sessionId) {
      await this.api.putProblem(this.sessionId, this.problemDocument());
      await this.refreshSolution();
    }
  }

  /** Resolve once pending edits have been flushed and panels repainted. */
  async whenIdle(): Promise<void> {
    for (;;) {
      if (this.timer !== null) {
        clearTimeout(this.timer);
        this.timer = null;
        this.flush();
      }
      const settled = this.queue;
      await settled;
      if (settled === this.queue && this.timer === null) {
        return;
      }
    }
  }

  // -- form ------------------------------------------------------------

  private render(): void {
    this.root.innerHTML = `
      <div class="dcfpr-app">
        <section class="judgments"></section>
        <section class="solution">
          <p class="status">Enter all ${this.alternatives.length - 1} judgments
            to see the ranking react.</p>
          <div class="id-gauge">I.D. <span class="id-badge">&ndash;</span></div>
          <ol class="ranking"></ol>
          <div class="weights"></div>
          <div class="lambda-control">
            <label>credibility &lambda;
              <input class="lambda-slider" type="range" disabled>
            </label>
            <span class="lambda-readout"></span>
            <span class="lambda-min-note"></span>
          </div>
          <table class="i-matrix"></table>
          <ul class="warnings"></ul>
        </section>
      </div>`;
    const judgments = this.root.querySelector(".judgments") as HTMLElement;
    for (const comparison of this.doc.comparisons) {
      judgments.appendChild(this.renderJudgment(comparison.left));
    }
    const slider = this.root.querySelector(".lambda-slider") as HTMLInputElement;
    slider.addEventListener("input", () => {
      this.customLambda = parseFloat(slider.value);
      const readout = this.root.querySelector(".lambda-readout") as HTMLElement;
      readout.textContent = fixed(this.customLambda, 2);
      this.scheduleRefresh();
    });
  }

  private renderJudgment(pair: number): HTMLElement {
    const left = this.alternatives[pair - 1];
    const right = this.alternatives[pair];
    const section = document.createElement("div");
    section.className = "judgment";
    section.dataset.pair = String(pair);
    section.innerHTML = `
      <h3>${left} over ${right}</h3>
      <div class="components"></div>
      <button type="button" class="add-row">+ value</button>
      <div class="residual">
        <span class="residual-label"></span>
        <div class="residual-bar"><div class="residual-fill"></div></div>
      </div>
      <p class="row-error" hidden></p>`;
    const comparison = this.comparison(pair);
    const host = section.querySelector(".components") as HTMLElement;
    comparison.components.forEach((row, index) => {
      host.appendChild(this.renderComponentRow(pair, index, row));
    });
    (section.querySelector(".add-row") as HTMLButtonElement).addEventListener(
      "click",
      () => {
        const rows = this.comparison(pair).components;
        const spare = residualMass(rows);
        rows.push({ b: 0.5, v: spare > 0 ? Number(spare.toFixed(3)) : 0.1 });
        host.appendChild(
          this.renderComponentRow(pair, rows.length - 1, rows[rows.length - 1]),
        );
        this.onEdited(pair);
      },
    );
    this.paintResidual(section, comparison.components);
    return section;
  }

  private renderComponentRow(
    pair: number,
    index: number,
    row: ComponentRow,
  ): HTMLElement {
    const el = document.createElement("div");
    el.className = "component-row";
    el.dataset.row = String(index);
    el.innerHTML = `
      <input class="b-slider" type="range" min="0" max="1" step="0.01">
      <input class="b-value" type="number" min="0" max="1" step="0.01">
      <input class="v-value" type="number" min="0" max="1" step="0.01">`;
    const slider = el.querySelector(".b-slider") as HTMLInputElement;
    const bValue = el.querySelector(".b-value") as HTMLInputElement;
    const vValue = el.querySelector(".v-value") as HTMLInputElement;
    slider.value = String(row.b);
    bValue.value = String(row.b);
    vValue.value = String(row.v);
    slider.addEventListener("input", () => {
      bValue.value = slider.value;
      this.readRow(pair, index, el);
    });
    bValue.addEventListener("input", () => {
      slider.value = bValue.value;
      this.readRow(pair, index, el);
    });
    vValue.addEventListener("input", () => this.readRow(pair, index, el));
    return el;
  }

  private comparison(pair: number) {
    const found = this.doc.comparisons.find((c) => c.left === pair);
    if (!found) throw new Error(`no comparison ${pair}`);
    return found;
  }

  private readRow(pair: number, index: number, el: HTMLElement): void {
    const b = parseFloat((el.querySelector(".b-value") as HTMLInputElement).value);
    const v = parseFloat((el.querySelector(".v-value") as HTMLInputElement).value);
    this.comparison(pair).components[index] = { b, v };
    this.onEdited(pair);
  }

  private onEdited(pair: number): void {
    this.touched.add(pair);
    const section = this.root.querySelector(
      `.judgment[data-pair="${pair}"]`,
    ) as HTMLElement;
    const components = this.comparison(pair).components;
    const problems = validateComponents(components);
    const error = section.querySelector(".row-error") as HTMLElement;
    this.paintResidual(section, components);
    section
      .querySelectorAll(".component-row")
      .forEach((rowEl, index) =>
        rowEl.classList.toggle(
          "invalid",
          problems.some((p) => p.index === index),
        ),
      );
    if (problems.length) {
      error.hidden = false;
      error.textContent = problems.map((p) => p.message).join("; ");
      return; // nothing is sent while the row is invalid
    }
    error.hidden = true;
    error.textContent = "";
    this.dirty.add(pair);
    this.scheduleRefresh();
  }

  private paintResidual(section: HTMLElement, components: ComponentRow[]): void {
    const spare = residualMass(components);
    const label = section.querySelector(".residual-label") as HTMLElement;
    label.textContent = `unassigned mass ${fixed(spare)}`;
    const filled = section.querySelector(".residual-fill") as HTMLElement;
    filled.style.width = `${+(spare * 100).toFixed(1)}%`;
    section.classList.toggle("incomplete", spare > 1e-12);
  }

  // -- refresh pipeline --------------------------------------------------

  private scheduleRefresh(): void {
    if (this.timer !== null) clearTimeout(this.timer);
    this.timer = setTimeout(() => {
      this.timer = null;
      this.flush();
    }, this.debounceMs);
  }

  private flush(): void {
    const pairs = [...this.dirty];
    this.dirty.clear();
    this.queue = this.queue.then(() => this.pushAndRefresh(pairs));
  }

  private async pushAndRefresh(pairs: number[]): Promise<void> {
    if (!this.sessionId) return;
    try {
      let solvable = true;
      for (const pair of pairs.sort((a, b) => a - b)) {
        const status = await this.api.patchComparison(
          this.sessionId,
          pair,
          this.comparison(pair).components,
        );
        solvable = status.solvable;
      }
      if (solvable && this.touched.size === this.doc.comparisons.length) {
        await this.refreshSolution();
      }
    } catch (err) {
      this.showStatus(err instanceof Error ? err.message : String(err));
    }
  }

  private async refreshSolution(): Promise<void> {
    if (!this.sessionId) return;
    try {
      const opts =
        this.customLambda !== null
          ? { lambda: this.customLambda }
          : { credibility: "medium" };
      this.solution = await this.api.getSolution(this.sessionId, opts);
      this.renderSolution(this.solution);
    } catch (err) {
      if (err instanceof ApiError && err.status === 422) {
        // slid under the feasibility floor: pin to the served lambda_min
        const floor = (err.payload as { lambda_min: string }).lambda_min;
        this.customLambda = parseFloat(floor);
        this.solution = await this.api.getSolution(this.sessionId, {
          lambda: this.customLambda,
        });
        this.renderSolution(this.solution);
        return;
      }
      if (err instanceof ApiError && err.status === 409) {
        this.showStatus("waiting for the remaining judgments");
        return;
      }
      this.showStatus(err instanceof Error ? err.message : String(err));
    }
  }

  private showStatus(text: string): void {
    const status = this.root.querySelector(".status") as HTMLElement;
    status.hidden = false;
    status.textContent = text;
  }

  // -- solution panels -----------------------------------------------------

  private renderSolution(solution: SolutionDocument): void {
    (this.root.querySelector(".status") as HTMLElement).hidden = true;
    const badge = this.root.querySelector(".id-badge") as HTMLElement;
    badge.textContent = fixed(solution.inconsistency_degree);

    const ranking = this.root.querySelector(".ranking") as HTMLElement;
    ranking.innerHTML = "";
    for (const label of solution.ranking.labels) {
      const item = document.createElement("li");
      item.textContent = label;
      ranking.appendChild(item);
    }

    this.renderWeights(solution);
    this.renderLambdaControl(solution);
    this.renderMatrix(solution);

    const warnings = this.root.querySelector(".warnings") as HTMLElement;
    warnings.innerHTML = "";
    for (const text of solution.warnings) {
      const item = document.createElement("li");
      item.textContent = text;
      warnings.appendChild(item);
    }
  }

  private weightBar(block: WeightBlock, alt: number, credibility: string): string {
    if (block.infeasible || !block.values) {
      return `<div class="weight-bar infeasible" data-credibility="${credibility}">
        <span class="value">&ndash;</span></div>`;
    }
    const weight = parseFloat(block.values[alt]);
    return `<div class="weight-bar" data-credibility="${credibility}">
      <div class="fill" style="width: ${(weight * 100).toFixed(1)}%"></div>
      <span class="value">${fixed(block.values[alt])}</span></div>`;
  }

  private renderWeights(solution: SolutionDocument): void {
    const host = this.root.querySelector(".weights") as HTMLElement;
    const custom =
      solution.weights.requested.credibility == null
        ? solution.weights.requested
        : null;
    host.innerHTML = solution.alternatives
      .map((label, alt) => {
        const bars = PRESETS.map((name) =>
          this.weightBar(solution.weights.presets[name], alt, name),
        ).join("");
        const customBar = custom ? this.weightBar(custom, alt, "custom") : "";
        const interval = solution.intervals.per_alternative[alt];
        return `<div class="weight-row" data-alt="${label}">
          <span class="alt-label">${label}</span>
          ${bars}${customBar}
          <span class="interval">${intervalText(interval)}</span>
        </div>`;
      })
      .join("");
  }

  private renderLambdaControl(solution: SolutionDocument): void {
    const slider = this.root.querySelector(".lambda-slider") as HTMLInputElement;
    const floor = solution.intervals.lambda_min;
    slider.disabled = floor === null;
    if (floor !== null) {
      slider.min = floor;
      slider.max = String(this.lambdaMax);
      slider.step = "0.001";
      const lambda =
        this.customLambda ?? parseFloat(solution.weights.requested.lambda ?? "4");
      slider.value = String(lambda);
      (this.root.querySelector(".lambda-readout") as HTMLElement).textContent =
        fixed(lambda, 2);
      (this.root.querySelector(".lambda-min-note") as HTMLElement).textContent =
        `stops at λ_min = ${fixed(floor)}`;
    }
  }

  private renderMatrix(solution: SolutionDocument): void {
    const table = this.root.querySelector(".i-matrix") as HTMLElement;
    const values = solution.matrices.integration;
    const masses = solution.matrices.integration_mass;
    const header = solution.alternatives
      .map((label) => `<th>${label}</th>`)
      .join("");
    const body = values
      .map((row, i) => {
        const cells = row
          .map((value, j) => {
            const q = parseFloat(masses[i][j]);
            return `<td data-i="${fixed(value, 4)}" data-q="${fixed(q, 2)}"
              style="background: rgba(37, 99, 168, ${(q * 0.55).toFixed(3)})"
              title="Q = ${fixed(q, 2)}">${fixed(value)}</td>`;
          })
          .join("");
        return `<tr><th>${solution.alternatives[i]}</th>${cells}</tr>`;
      })
      .join("");
    table.innerHTML = `<thead><tr><th></th>${header}</tr></thead><tbody>${body}</tbody>`;
  }
}
