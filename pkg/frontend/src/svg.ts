/**
 * Minimal deterministic SVG builder: fixed size, fixed style, no
 * timestamps, numbers serialized with fixed precision so identical
 * inputs give identical bytes.
 */

export const WIDTH = 720;
export const HEIGHT = 480;
export const MARGIN = { top: 48, right: 36, bottom: 64, left: 84 };

export interface Scale {
  (value: number): number;
  ticks: number[];
}

const fmt = (x: number): string => {
  if (!Number.isFinite(x)) throw new Error(`non-finite coordinate ${x}`);
  return x.toFixed(3).replace(/\.?0+$/, "") || "0";
};

export function tickLabel(value: number): string {
  if (value !== 0 && (Math.abs(value) >= 1e5 || Math.abs(value) < 1e-3)) {
    return value.toExponential(1).replace("e+", "e");
  }
  return String(Number(value.toPrecision(6)));
}

export function linearScale(lo: number, hi: number, outLo: number, outHi: number): Scale {
  if (hi <= lo) hi = lo + 1;
  const scale = ((value: number) =>
    outLo + ((value - lo) / (hi - lo)) * (outHi - outLo)) as Scale;
  const step = (hi - lo) / 5;
  scale.ticks = Array.from({ length: 6 }, (_, i) => lo + i * step);
  return scale;
}

export function logScale(lo: number, hi: number, outLo: number, outHi: number): Scale {
  if (lo <= 0 || hi <= lo) throw new Error(`bad log domain [${lo}, ${hi}]`);
  const la = Math.log10(lo);
  const lb = Math.log10(hi);
  const scale = ((value: number) =>
    outLo + ((Math.log10(value) - la) / (lb - la)) * (outHi - outLo)) as Scale;
  const decades: number[] = [];
  for (let e = Math.ceil(la - 1e-9); e <= Math.floor(lb + 1e-9); e++) {
    decades.push(10 ** e);
  }
  if (decades.length >= 2) {
    scale.ticks = decades;
  } else {
    // under two decades: fill in 1-2-5 mantissa ticks
    const ticks: number[] = [];
    for (let e = Math.floor(la); e <= Math.ceil(lb); e++) {
      for (const m of [1, 2, 5]) {
        const t = m * 10 ** e;
        if (t >= lo * (1 - 1e-9) && t <= hi * (1 + 1e-9)) ticks.push(t);
      }
    }
    scale.ticks = ticks.length >= 2 ? ticks : [lo, hi];
  }
  return scale;
}

export class Figure {
  private parts: string[] = [];

  constructor(title: string) {
    this.parts.push(
      `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" ` +
        `viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="Helvetica, Arial, sans-serif">`,
      `<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`,
      `<text x="${WIDTH / 2}" y="24" text-anchor="middle" font-size="16">${escapeXml(title)}</text>`,
    );
  }

  metadata(payload: unknown): void {
    this.parts.push(`<metadata id="fit">${escapeXml(JSON.stringify(payload))}</metadata>`);
  }

  axes(x: Scale, y: Scale, xLabel: string, yLabel: string): void {
    const { top, bottom, left, right } = MARGIN;
    const x0 = left;
    const x1 = WIDTH - right;
    const y0 = HEIGHT - bottom;
    const y1 = top;
    this.parts.push(
      `<line x1="${x0}" y1="${y0}" x2="${x1}" y2="${y0}" stroke="black"/>`,
      `<line x1="${x0}" y1="${y0}" x2="${x0}" y2="${y1}" stroke="black"/>`,
    );
    for (const t of x.ticks) {
      const px = fmt(x(t));
      this.parts.push(
        `<line x1="${px}" y1="${y0}" x2="${px}" y2="${y0 + 5}" stroke="black"/>`,
        `<text x="${px}" y="${y0 + 20}" text-anchor="middle" font-size="11">${tickLabel(t)}</text>`,
      );
    }
    for (const t of y.ticks) {
      const py = fmt(y(t));
      this.parts.push(
        `<line x1="${x0 - 5}" y1="${py}" x2="${x0}" y2="${py}" stroke="black"/>`,
        `<text x="${x0 - 8}" y="${py}" text-anchor="end" dominant-baseline="middle" font-size="11">${tickLabel(t)}</text>`,
      );
    }
    this.parts.push(
      `<text x="${(x0 + x1) / 2}" y="${HEIGHT - 16}" text-anchor="middle" font-size="13">${escapeXml(xLabel)}</text>`,
      `<text x="20" y="${(y0 + y1) / 2}" text-anchor="middle" font-size="13" transform="rotate(-90 20 ${(y0 + y1) / 2})">${escapeXml(yLabel)}</text>`,
    );
  }

  polyline(points: Array<[number, number]>, color: string, dashed = false): void {
    const attr = dashed ? ' stroke-dasharray="6 4"' : "";
    const path = points.map(([px, py]) => `${fmt(px)},${fmt(py)}`).join(" ");
    this.parts.push(
      `<polyline points="${path}" fill="none" stroke="${color}" stroke-width="1.5"${attr}/>`,
    );
  }

  dots(points: Array<[number, number]>, color: string, r = 4): void {
    for (const [px, py] of points) {
      this.parts.push(`<circle cx="${fmt(px)}" cy="${fmt(py)}" r="${r}" fill="${color}"/>`);
    }
  }

  label(x: number, y: number, text: string, color = "black"): void {
    this.parts.push(
      `<text x="${fmt(x)}" y="${fmt(y)}" font-size="12" fill="${color}">${escapeXml(text)}</text>`,
    );
  }

  legend(entries: Array<[string, string]>): void {
    const x = WIDTH - MARGIN.right - 180;
    let y = MARGIN.top + 8;
    for (const [text, color] of entries) {
      this.parts.push(
        `<line x1="${x}" y1="${y - 4}" x2="${x + 22}" y2="${y - 4}" stroke="${color}" stroke-width="2"/>`,
        `<text x="${x + 28}" y="${y}" font-size="12">${escapeXml(text)}</text>`,
      );
      y += 18;
    }
  }

  render(): string {
    return [...this.parts, "</svg>", ""].join("\n");
  }
}

function escapeXml(text: string): string {
  return text
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;");
}

export function plotArea(): { x0: number; x1: number; y0: number; y1: number } {
  return {
    x0: MARGIN.left,
    x1: WIDTH - MARGIN.right,
    y0: HEIGHT - MARGIN.bottom,
    y1: MARGIN.top,
  };
}
