/**
 * Stand-alone SVG builder for two-series overlays: a solid curve for the
 * computed series and a dashed curve for the reference, sharing one axis
 * box. No styling beyond solid/dashed so the overlay stays legible.
 */

export interface Series {
  label: string;
  xs: number[];
  ys: number[];
  dashed: boolean;
}

const WIDTH = 640;
const HEIGHT = 400;
const MARGIN = { left: 64, right: 20, top: 40, bottom: 44 };

interface Range {
  min: number;
  max: number;
}

function rangeOf(values: number[]): Range {
  let min = Infinity;
  let max = -Infinity;
  for (const v of values) {
    if (Number.isFinite(v)) {
      min = Math.min(min, v);
      max = Math.max(max, v);
    }
  }
  if (!Number.isFinite(min)) {
    throw new Error("series has no finite points");
  }
  if (min === max) {
    min -= 1;
    max += 1;
  }
  return { min, max };
}

function fmt(value: number): string {
  return Number(value.toPrecision(6)).toString();
}

export function buildOverlaySvg(series: Series[], title?: string): string {
  if (series.length === 0) {
    throw new Error("nothing to plot");
  }
  const xRange = rangeOf(series.flatMap((s) => s.xs));
  const yRange = rangeOf(series.flatMap((s) => s.ys));
  const plotW = WIDTH - MARGIN.left - MARGIN.right;
  const plotH = HEIGHT - MARGIN.top - MARGIN.bottom;
  const sx = (x: number) => MARGIN.left + ((x - xRange.min) / (xRange.max - xRange.min)) * plotW;
  const sy = (y: number) => MARGIN.top + plotH - ((y - yRange.min) / (yRange.max - yRange.min)) * plotH;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${WIDTH} ${HEIGHT}" ` +
      `font-family="sans-serif" font-size="12">`,
  );
  if (title) {
    parts.push(`<title>${escapeXml(title)}</title>`);
    parts.push(
      `<text x="${WIDTH / 2}" y="${MARGIN.top - 16}" text-anchor="middle" font-size="14">` +
        `${escapeXml(title)}</text>`,
    );
  }
  parts.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${plotW}" height="${plotH}" ` +
      `fill="none" stroke="black" stroke-width="1"/>`,
  );
  parts.push(
    `<text x="${MARGIN.left}" y="${HEIGHT - 20}" text-anchor="middle">${fmt(xRange.min)}</text>`,
    `<text x="${MARGIN.left + plotW}" y="${HEIGHT - 20}" text-anchor="middle">${fmt(xRange.max)}</text>`,
    `<text x="${MARGIN.left - 8}" y="${MARGIN.top + plotH + 4}" text-anchor="end">${fmt(yRange.min)}</text>`,
    `<text x="${MARGIN.left - 8}" y="${MARGIN.top + 4}" text-anchor="end">${fmt(yRange.max)}</text>`,
  );

  let legendY = MARGIN.top + 14;
  for (const s of series) {
    const points: string[] = [];
    for (let i = 0; i < s.xs.length; i++) {
      if (Number.isFinite(s.xs[i]) && Number.isFinite(s.ys[i])) {
        points.push(`${sx(s.xs[i]).toFixed(2)},${sy(s.ys[i]).toFixed(2)}`);
      }
    }
    const dash = s.dashed ? ' stroke-dasharray="6 4"' : "";
    parts.push(
      `<polyline fill="none" stroke="black" stroke-width="1.5"${dash} points="${points.join(" ")}"/>`,
    );
    const lx = MARGIN.left + plotW - 150;
    parts.push(
      `<line x1="${lx}" y1="${legendY}" x2="${lx + 28}" y2="${legendY}" stroke="black" ` +
        `stroke-width="1.5"${dash}/>`,
      `<text x="${lx + 34}" y="${legendY + 4}">${escapeXml(s.label)}</text>`,
    );
    legendY += 16;
  }
  parts.push("</svg>");
  return parts.join("\n") + "\n";
}

function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}
