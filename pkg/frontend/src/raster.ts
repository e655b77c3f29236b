/**
 * Minimal RGBA raster canvas: rectangles, 1-px and thick polylines,
 * vertical min-max bands with alpha blending, and bitmap text. Enough to
 * draw publication-style line charts without a browser canvas.
 */
import { GLYPH_H, GLYPH_W, glyphRows } from "./font";

export type Color = [number, number, number, number]; // RGBA, 0-255

export class Canvas {
  readonly width: number;
  readonly height: number;
  readonly data: Uint8Array;

  constructor(width: number, height: number, background: Color = [255, 255, 255, 255]) {
    this.width = width;
    this.height = height;
    this.data = new Uint8Array(width * height * 4);
    for (let i = 0; i < width * height; i++) {
      this.data.set(background, i * 4);
    }
  }

  blend(x: number, y: number, color: Color): void {
    x = Math.round(x);
    y = Math.round(y);
    if (x < 0 || y < 0 || x >= this.width || y >= this.height) return;
    const i = (y * this.width + x) * 4;
    const a = color[3] / 255;
    for (let c = 0; c < 3; c++) {
      this.data[i + c] = Math.round(color[c] * a + this.data[i + c] * (1 - a));
    }
    this.data[i + 3] = 255;
  }

  fillRect(x0: number, y0: number, w: number, h: number, color: Color): void {
    for (let y = y0; y < y0 + h; y++) {
      for (let x = x0; x < x0 + w; x++) {
        this.blend(x, y, color);
      }
    }
  }

  line(x0: number, y0: number, x1: number, y1: number, color: Color, width = 1): void {
    const dx = Math.abs(x1 - x0);
    const dy = Math.abs(y1 - y0);
    const steps = Math.max(dx, dy, 1);
    for (let s = 0; s <= steps; s++) {
      const t = s / steps;
      const x = x0 + (x1 - x0) * t;
      const y = y0 + (y1 - y0) * t;
      if (width <= 1) {
        this.blend(x, y, color);
      } else {
        const r = (width - 1) / 2;
        for (let oy = -Math.ceil(r); oy <= Math.ceil(r); oy++) {
          for (let ox = -Math.ceil(r); ox <= Math.ceil(r); ox++) {
            if (ox * ox + oy * oy <= r * r + 0.26) this.blend(x + ox, y + oy, color);
          }
        }
      }
    }
  }

  polyline(points: Array<[number, number]>, color: Color, width = 1): void {
    for (let i = 1; i < points.length; i++) {
      this.line(points[i - 1][0], points[i - 1][1], points[i][0], points[i][1], color, width);
    }
    if (points.length === 1) {
      this.line(points[0][0], points[0][1], points[0][0], points[0][1], color, width);
    }
  }

  dashedLine(x0: number, y0: number, x1: number, y1: number, color: Color, dash = 4): void {
    const dx = x1 - x0;
    const dy = y1 - y0;
    const length = Math.hypot(dx, dy);
    const steps = Math.max(Math.round(length), 1);
    for (let s = 0; s <= steps; s++) {
      if (Math.floor(s / dash) % 2 === 0) {
        this.blend(x0 + (dx * s) / steps, y0 + (dy * s) / steps, color);
      }
    }
  }

  /** Fill the vertical span between two x-sorted polylines (min-max band). */
  band(
    xs: number[],
    yLow: number[],
    yHigh: number[],
    color: Color,
  ): void {
    if (xs.length === 0) return;
    const xStart = Math.ceil(Math.min(...xs));
    const xEnd = Math.floor(Math.max(...xs));
    for (let x = xStart; x <= xEnd; x++) {
      let seg = 0;
      while (seg < xs.length - 2 && xs[seg + 1] < x) seg++;
      const span = xs[seg + 1] - xs[seg] || 1;
      const t = (x - xs[seg]) / span;
      const lo = yLow[seg] + (yLow[seg + 1] - yLow[seg]) * t;
      const hi = yHigh[seg] + (yHigh[seg + 1] - yHigh[seg]) * t;
      for (let y = Math.round(Math.min(lo, hi)); y <= Math.round(Math.max(lo, hi)); y++) {
        this.blend(x, y, color);
      }
    }
  }

  text(x: number, y: number, message: string, color: Color, scale = 1): void {
    let cx = Math.round(x);
    for (const char of message) {
      const rows = glyphRows(char);
      for (let gy = 0; gy < GLYPH_H; gy++) {
        for (let gx = 0; gx < GLYPH_W; gx++) {
          if (rows[gy][gx] === "#") {
            this.fillRect(cx + gx * scale, Math.round(y) + gy * scale, scale, scale, color);
          }
        }
      }
      cx += (GLYPH_W + 1) * scale;
    }
  }

  /** Vertical text reading bottom-to-top (y-axis labels). */
  textVertical(x: number, y: number, message: string, color: Color, scale = 1): void {
    let cy = Math.round(y);
    for (const char of message) {
      const rows = glyphRows(char);
      for (let gy = 0; gy < GLYPH_H; gy++) {
        for (let gx = 0; gx < GLYPH_W; gx++) {
          if (rows[gy][gx] === "#") {
            // rotate 90 degrees counter-clockwise
            this.fillRect(Math.round(x) + gy * scale, cy - gx * scale, scale, scale, color);
          }
        }
      }
      cy -= (GLYPH_W + 1) * scale;
    }
  }
}

export function textWidth(message: string, scale = 1): number {
  return message.length * (GLYPH_W + 1) * scale - scale;
}
