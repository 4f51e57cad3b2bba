/** Figure composition: turns parsed sweep rows into SVG documents.
 *
 * Rendering is a pure function of the CSV content; the only IO lives in
 * `renderToFile`. Curves are drawn as straight polyline segments between the
 * grid points, free-evolution curves solid, measured curves dotted.
 */

import * as fs from "fs";
import * as path from "path";

import { MetricColumn, SchemaMismatch, SweepRow, groupByRatio, parseSweepCsv, requireMetric } from "./schema";
import { Frame, axes, document, fmt, heatColor, polyline, referenceLine, text, xPix, yPix } from "./svg";

export type FigureName = "fig1" | "fig2" | "fig3" | "fig4" | "fig5";

export const FIGURE_NAMES: FigureName[] = ["fig1", "fig2", "fig3", "fig4", "fig5"];

export interface FigureSpec {
  name: FigureName;
  inputCsv: string[];
  outputImage: string;
  style: "line" | "surface";
  referenceLines: number[];
}

export interface CurveGroup {
  r: number;
  interval: number | null; // measurement spacing; null = free evolution
  rows: SweepRow[];
}

const METRIC_LABEL: Record<MetricColumn, string> = {
  s_svetlichny: "S",
  s_bound: "S bound",
  chsh_ab: "CHSH",
  pi_tangle: "π",
  survival: "P",
};

const PALETTE = ["#0072B2", "#D55E00", "#009E73", "#CC79A7"];
const MEASURED_PALETTE = ["#E69F00", "#56B4E9", "#CC79A7"];

const PANEL = { width: 250, height: 200, top: 34, left: 56, gapX: 92, bottom: 52 };

function frameFor(index: number, xMin: number, xMax: number, yMin: number, yMax: number): Frame {
  return {
    x0: PANEL.left + index * (PANEL.width + PANEL.gapX),
    y0: PANEL.top,
    width: PANEL.width,
    height: PANEL.height,
    xMin,
    xMax,
    yMin,
    yMax,
  };
}

function points(rows: SweepRow[], metric: MetricColumn, f: Frame): Array<[number, number]> {
  const out: Array<[number, number]> = [];
  for (const row of rows) {
    const v = row[metric];
    if (v !== null) {
      out.push([xPix(f, row.tau), yPix(f, v)]);
    }
  }
  return out;
}

function seriesLabel(group: CurveGroup): string {
  const base = `R=${group.r}`;
  return group.interval === null ? `${base} free` : `${base} λT=${group.interval}`;
}

function linePanel(
  index: number,
  groups: CurveGroup[],
  metric: MetricColumn,
  refs: number[],
  colours: string[],
  dashed: boolean[],
): string {
  const taus = groups.flatMap((g) => g.rows.map((r) => r.tau));
  const values = groups.flatMap((g) => g.rows.map((r) => r[metric]).filter((v): v is number => v !== null));
  const yTop = Math.max(...values, ...refs, 1e-9) * 1.08;
  const f = frameFor(index, Math.min(...taus), Math.max(...taus), 0, yTop);
  const parts: string[] = [axes(f, "τ", METRIC_LABEL[metric])];
  for (const level of refs) {
    parts.push(referenceLine(f, level, `${level}`));
  }
  groups.forEach((group, k) => {
    parts.push(polyline(points(group.rows, metric, f), colours[k], { dashed: dashed[k], series: seriesLabel(group) }));
    parts.push(
      `<text x="${fmt(f.x0 + 4)}" y="${fmt(f.y0 + 12 + 11 * k)}" font-size="9" fill="${colours[k]}">` +
        `${seriesLabel(group)}</text>`,
    );
  });
  return parts.join("\n");
}

function heatmapPanel(index: number, rows: SweepRow[], metric: MetricColumn): string {
  const taus = [...new Set(rows.map((r) => r.tau))].sort((a, b) => a - b);
  const ratios = [...new Set(rows.map((r) => r.r))].sort((a, b) => a - b);
  const values = rows.map((r) => r[metric]).filter((v): v is number => v !== null);
  const lo = Math.min(...values);
  const hi = Math.max(...values);
  const f = frameFor(index, taus[0], taus[taus.length - 1], ratios[0], ratios[ratios.length - 1]);
  const cellW = f.width / Math.max(taus.length - 1, 1);
  const cellH = f.height / Math.max(ratios.length - 1, 1);
  const parts: string[] = [];
  for (const row of rows) {
    const v = row[metric];
    if (v === null) {
      continue;
    }
    const cx = xPix(f, row.tau);
    const cy = yPix(f, row.r);
    parts.push(
      `<rect class="cell" x="${fmt(cx - cellW / 2)}" y="${fmt(cy - cellH / 2)}" width="${fmt(cellW)}" ` +
        `height="${fmt(cellH)}" fill="${heatColor((v - lo) / (hi - lo || 1))}"/>`,
    );
  }
  parts.push(axes(f, "τ", "R"));
  parts.push(text(f.x0 + f.width / 2, f.y0 - 10, `${METRIC_LABEL[metric]}(τ, R)`, 11));
  return parts.join("\n");
}

function widthFor(panels: number): number {
  return PANEL.left + panels * (PANEL.width + PANEL.gapX);
}

const HEIGHT = PANEL.top + PANEL.height + PANEL.bottom;

function splitExtremes(groups: CurveGroup[]): { strong: CurveGroup[]; weak: CurveGroup[] } {
  const sorted = [...groups].sort((a, b) => b.r - a.r);
  return { strong: sorted.slice(0, 2), weak: sorted.slice(-2).reverse() };
}

function renderSurfaceFigure(groups: CurveGroup[], metric: MetricColumn, refs: number[]): string {
  const all = groups.flatMap((g) => g.rows);
  const { strong, weak } = splitExtremes(groups);
  const body = [
    heatmapPanel(0, all, metric),
    linePanel(1, strong, metric, refs, PALETTE, strong.map(() => false)),
    linePanel(2, weak, metric, refs, PALETTE, weak.map(() => false)),
  ].join("\n");
  return document(widthFor(3), HEIGHT, body);
}

function renderFig2(groups: CurveGroup[]): string {
  const body = [
    linePanel(0, groups, "s_svetlichny", [4], PALETTE, groups.map(() => false)),
    linePanel(1, groups, "chsh_ab", [2], PALETTE, groups.map(() => false)),
  ].join("\n");
  return document(widthFor(2), HEIGHT, body);
}

function renderMeasuredFigure(groups: CurveGroup[], metric: MetricColumn, refs: number[]): string {
  const ratios = [...new Set(groups.map((g) => g.r))].sort((a, b) => b - a);
  const panels = ratios.map((r, index) => {
    const members = groups.filter((g) => g.r === r);
    const free = members.filter((g) => g.interval === null);
    const measured = members
      .filter((g) => g.interval !== null)
      .sort((a, b) => (b.interval as number) - (a.interval as number));
    const ordered = [...free, ...measured];
    const colours = [...free.map(() => "#000000"), ...measured.map((_, k) => MEASURED_PALETTE[k % 3])];
    const dashed = [...free.map(() => false), ...measured.map(() => true)];
    return linePanel(index, ordered, metric, refs, colours, dashed);
  });
  return document(widthFor(ratios.length), HEIGHT, panels.join("\n"));
}

export function renderFigure(name: FigureName, groups: CurveGroup[]): string {
  if (groups.length === 0 || groups.every((g) => g.rows.length === 0)) {
    throw new SchemaMismatch("no curve groups to render");
  }
  switch (name) {
    case "fig1":
      return renderSurfaceFigure(groups, "s_svetlichny", [4]);
    case "fig2":
      return renderFig2(groups);
    case "fig3":
      return renderSurfaceFigure(groups, "pi_tangle", []);
    case "fig4":
      return renderMeasuredFigure(groups, "s_svetlichny", [4]);
    case "fig5":
      return renderMeasuredFigure(groups, "pi_tangle", []);
  }
}

const FIGURE_METRIC: Record<FigureName, MetricColumn> = {
  fig1: "s_svetlichny",
  fig2: "chsh_ab",
  fig3: "pi_tangle",
  fig4: "s_svetlichny",
  fig5: "pi_tangle",
};

interface SidecarFileEntry {
  path: string;
  r: number | number[] | null;
  interval: number | null;
}

export function figureSpec(name: FigureName, csvDir: string, outDir: string): FigureSpec {
  const style = name === "fig1" || name === "fig3" ? "surface" : "line";
  const refs = name === "fig2" ? [2, 4] : name === "fig3" || name === "fig5" ? [] : [4];
  let inputs = [path.join(csvDir, `${name}.csv`)];
  if (name === "fig4" || name === "fig5") {
    const sidecarPath = path.join(csvDir, `${name}.json`);
    if (!fs.existsSync(sidecarPath)) {
      throw new SchemaMismatch(`sidecar ${sidecarPath} not found`);
    }
    const sidecar = JSON.parse(fs.readFileSync(sidecarPath, "utf8")) as { files: SidecarFileEntry[] };
    inputs = sidecar.files.map((f) => path.join(csvDir, f.path));
  }
  return { name, inputCsv: inputs, outputImage: path.join(outDir, `${name}.svg`), style, referenceLines: refs };
}

/** Read the spec's inputs, render, write the image; returns the output path. */
export function renderToFile(spec: FigureSpec): string {
  const groups: CurveGroup[] = [];
  for (const input of spec.inputCsv) {
    if (!fs.existsSync(input)) {
      throw new SchemaMismatch(`input CSV ${input} not found`);
    }
    const rows = parseSweepCsv(fs.readFileSync(input, "utf8"));
    requireMetric(rows, FIGURE_METRIC[spec.name]);
    if (spec.name === "fig4" || spec.name === "fig5") {
      // one file per (R, schedule) group; the interval is recoverable from the
      // file name recorded in the sidecar
      const match = /_T([0-9.]+)\.csv$/.exec(input);
      groups.push({
        r: rows[0].r,
        interval: match ? Number(match[1]) : null,
        rows,
      });
    } else {
      for (const [r, bucket] of groupByRatio(rows)) {
        groups.push({ r, interval: null, rows: bucket });
      }
    }
  }
  const svg = renderFigure(spec.name, groups);
  fs.mkdirSync(path.dirname(spec.outputImage), { recursive: true });
  fs.writeFileSync(spec.outputImage, svg);
  return spec.outputImage;
}
