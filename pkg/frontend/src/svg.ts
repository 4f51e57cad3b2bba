/** Minimal deterministic SVG builder: fixed coordinate precision, no
 * randomness, so identical data always produces identical bytes. */

export interface Frame {
  x0: number;
  y0: number;
  width: number;
  height: number;
  xMin: number;
  xMax: number;
  yMin: number;
  yMax: number;
}

export const fmt = (v: number): string => (Math.abs(v) < 5e-7 ? "0" : v.toFixed(2));

export function xPix(f: Frame, x: number): number {
  return f.x0 + ((x - f.xMin) / (f.xMax - f.xMin || 1)) * f.width;
}

export function yPix(f: Frame, y: number): number {
  return f.y0 + f.height - ((y - f.yMin) / (f.yMax - f.yMin || 1)) * f.height;
}

export function polyline(
  points: Array<[number, number]>,
  stroke: string,
  options: { dashed?: boolean; series: string },
): string {
  const path = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
  const dash = options.dashed ? ' stroke-dasharray="5 4"' : "";
  return (
    `<polyline class="curve" data-series="${options.series}" fill="none" ` +
    `stroke="${stroke}" stroke-width="1.5"${dash} points="${path}"/>`
  );
}

export function referenceLine(f: Frame, y: number, label: string): string {
  const py = fmt(yPix(f, y));
  return (
    `<line class="refline" data-level="${y}" x1="${fmt(f.x0)}" y1="${py}" ` +
    `x2="${fmt(f.x0 + f.width)}" y2="${py}" stroke="#808080" stroke-width="1" stroke-dasharray="2 3"/>` +
    `<text x="${fmt(f.x0 + f.width + 3)}" y="${py}" font-size="9" fill="#808080">${label}</text>`
  );
}

export function text(x: number, y: number, body: string, size = 11, anchor = "middle"): string {
  return `<text x="${fmt(x)}" y="${fmt(y)}" font-size="${size}" text-anchor="${anchor}" fill="#222">${body}</text>`;
}

function ticks(lo: number, hi: number, n = 5): number[] {
  const out: number[] = [];
  for (let i = 0; i <= n; i++) {
    out.push(lo + ((hi - lo) * i) / n);
  }
  return out;
}

const tickLabel = (v: number): string => {
  const rounded = Number(v.toPrecision(3));
  return `${rounded}`;
};

export function axes(f: Frame, xLabel: string, yLabel: string): string {
  const parts: string[] = [];
  const bottom = f.y0 + f.height;
  parts.push(
    `<rect class="panel" x="${fmt(f.x0)}" y="${fmt(f.y0)}" width="${fmt(f.width)}" ` +
      `height="${fmt(f.height)}" fill="none" stroke="#222" stroke-width="1"/>`,
  );
  for (const tx of ticks(f.xMin, f.xMax)) {
    const px = xPix(f, tx);
    parts.push(`<line x1="${fmt(px)}" y1="${fmt(bottom)}" x2="${fmt(px)}" y2="${fmt(bottom + 4)}" stroke="#222"/>`);
    parts.push(text(px, bottom + 15, tickLabel(tx), 9));
  }
  for (const ty of ticks(f.yMin, f.yMax)) {
    const py = yPix(f, ty);
    parts.push(`<line x1="${fmt(f.x0 - 4)}" y1="${fmt(py)}" x2="${fmt(f.x0)}" y2="${fmt(py)}" stroke="#222"/>`);
    parts.push(text(f.x0 - 7, py + 3, tickLabel(ty), 9, "end"));
  }
  parts.push(text(f.x0 + f.width / 2, bottom + 30, xLabel));
  parts.push(
    `<text x="${fmt(f.x0 - 38)}" y="${fmt(f.y0 + f.height / 2)}" font-size="11" text-anchor="middle" ` +
      `fill="#222" transform="rotate(-90 ${fmt(f.x0 - 38)} ${fmt(f.y0 + f.height / 2)})">${yLabel}</text>`,
  );
  return parts.join("\n");
}

/** Three-stop ramp (dark violet, teal, yellow), close enough to a perceptual
 * colormap and readable for the common colour-vision deficiencies. */
export function heatColor(t: number): string {
  const stops: Array<[number, number, number]> = [
    [68, 1, 84],
    [33, 145, 140],
    [253, 231, 37],
  ];
  const clamped = Math.min(Math.max(t, 0), 1);
  const scaled = clamped * 2;
  const idx = scaled < 1 ? 0 : 1;
  const frac = scaled - idx;
  const mix = stops[idx].map((c, k) => Math.round(c + (stops[idx + 1][k] - c) * frac));
  return `rgb(${mix[0]},${mix[1]},${mix[2]})`;
}

export function document(width: number, height: number, body: string): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}">\n<rect width="${width}" height="${height}" fill="#ffffff"/>\n` +
    body +
    "\n</svg>\n"
  );
}
