/* Minimal deterministic SVG builder: axes, scatter, lines, heatmap cells.
 *
 * Pure string assembly with fixed number formatting; byte-identical output
 * for byte-identical input is the contract the gallery tests pin down.
 */

export interface Extent {
	min: number;
	max: number;
}

export interface PanelSpec {
	x: Extent;
	y: Extent;
	width: number;
	height: number;
	title?: string;
	xLabel?: string;
	yLabel?: string;
}

export const PALETTE = [
	"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
	"#8c564b", "#17becf", "#7f7f7f",
] as const;

export function fmt(v: number): string {
	if (!Number.isFinite(v)) return "0";
	if (v === 0) return "0";
	const s = v.toPrecision(6);
	return s.includes(".") ? s.replace(/\.?0+$/, "").replace(/\.?0+e/, "e") : s;
}

export function padExtent(values: number[], frac = 0.05): Extent {
	let min = Infinity;
	let max = -Infinity;
	for (const v of values) {
		if (!Number.isFinite(v)) continue;
		if (v < min) min = v;
		if (v > max) max = v;
	}
	if (!(min < max)) {
		min = min === Infinity ? 0 : min - 1;
		max = min + 2;
	}
	const pad = (max - min) * frac;
	return { min: min - pad, max: max + pad };
}

export class Panel {
	readonly spec: PanelSpec;
	private readonly parts: string[] = [];
	private readonly margin = { left: 52, right: 14, top: 28, bottom: 42 };

	constructor(spec: PanelSpec) {
		this.spec = spec;
	}

	get innerWidth(): number {
		return this.spec.width - this.margin.left - this.margin.right;
	}

	get innerHeight(): number {
		return this.spec.height - this.margin.top - this.margin.bottom;
	}

	sx(x: number): number {
		const { min, max } = this.spec.x;
		return this.margin.left + ((x - min) / (max - min)) * this.innerWidth;
	}

	sy(y: number): number {
		const { min, max } = this.spec.y;
		return this.margin.top + (1 - (y - min) / (max - min)) * this.innerHeight;
	}

	scatter(xs: number[], ys: number[], color: string, r = 1.6, opacity = 0.75): void {
		const pts: string[] = [];
		for (let i = 0; i < Math.min(xs.length, ys.length); i++) {
			pts.push(
				`<circle cx="${fmt(this.sx(xs[i]!))}" cy="${fmt(this.sy(ys[i]!))}" r="${fmt(r)}"/>`,
			);
		}
		this.parts.push(
			`<g fill="${color}" fill-opacity="${fmt(opacity)}" stroke="none">${pts.join("")}</g>`,
		);
	}

	line(xs: number[], ys: number[], color: string, width = 1.6, dash?: string): void {
		const pts: string[] = [];
		for (let i = 0; i < Math.min(xs.length, ys.length); i++) {
			pts.push(`${fmt(this.sx(xs[i]!))},${fmt(this.sy(ys[i]!))}`);
		}
		const dashAttr = dash ? ` stroke-dasharray="${dash}"` : "";
		this.parts.push(
			`<polyline fill="none" stroke="${color}" stroke-width="${fmt(width)}"${dashAttr} points="${pts.join(" ")}"/>`,
		);
	}

	cells(
		xs: number[],
		ys: number[],
		values: number[],
		cellW: number,
		cellH: number,
		colormap: (t: number) => string,
		vmin?: number,
		vmax?: number,
	): void {
		let lo = vmin ?? Infinity;
		let hi = vmax ?? -Infinity;
		if (vmin === undefined || vmax === undefined) {
			for (const v of values) {
				if (v < lo) lo = v;
				if (v > hi) hi = v;
			}
			if (!(lo < hi)) hi = lo + 1;
		}
		const w = Math.abs(this.sx(cellW) - this.sx(0));
		const h = Math.abs(this.sy(cellH) - this.sy(0));
		const rects: string[] = [];
		for (let i = 0; i < values.length; i++) {
			const t = Math.max(0, Math.min(1, (values[i]! - lo) / (hi - lo)));
			rects.push(
				`<rect x="${fmt(this.sx(xs[i]!) - w / 2)}" y="${fmt(this.sy(ys[i]!) - h / 2)}" ` +
					`width="${fmt(w)}" height="${fmt(h)}" fill="${colormap(t)}"/>`,
			);
		}
		this.parts.push(`<g stroke="none">${rects.join("")}</g>`);
	}

	legend(entries: Array<{ label: string; color: string }>): void {
		const x0 = this.margin.left + 8;
		let y = this.margin.top + 12;
		const items: string[] = [];
		for (const e of entries) {
			items.push(
				`<rect x="${fmt(x0)}" y="${fmt(y - 7)}" width="14" height="4" fill="${e.color}"/>` +
					`<text x="${fmt(x0 + 20)}" y="${fmt(y)}" font-size="10">${escapeXml(e.label)}</text>`,
			);
			y += 14;
		}
		this.parts.push(`<g font-family="sans-serif">${items.join("")}</g>`);
	}

	private frame(): string {
		const { left, top } = this.margin;
		const bits: string[] = [];
		bits.push(
			`<rect x="${fmt(left)}" y="${fmt(top)}" width="${fmt(this.innerWidth)}" ` +
				`height="${fmt(this.innerHeight)}" fill="none" stroke="#333" stroke-width="1"/>`,
		);
		for (const t of ticks(this.spec.x.min, this.spec.x.max)) {
			const px = this.sx(t);
			bits.push(
				`<line x1="${fmt(px)}" y1="${fmt(top + this.innerHeight)}" x2="${fmt(px)}" ` +
					`y2="${fmt(top + this.innerHeight + 4)}" stroke="#333"/>` +
					`<text x="${fmt(px)}" y="${fmt(top + this.innerHeight + 16)}" font-size="9" ` +
					`text-anchor="middle">${fmt(t)}</text>`,
			);
		}
		for (const t of ticks(this.spec.y.min, this.spec.y.max)) {
			const py = this.sy(t);
			bits.push(
				`<line x1="${fmt(left - 4)}" y1="${fmt(py)}" x2="${fmt(left)}" y2="${fmt(py)}" stroke="#333"/>` +
					`<text x="${fmt(left - 7)}" y="${fmt(py + 3)}" font-size="9" text-anchor="end">${fmt(t)}</text>`,
			);
		}
		if (this.spec.title) {
			bits.push(
				`<text x="${fmt(left + this.innerWidth / 2)}" y="${fmt(top - 9)}" font-size="12" ` +
					`text-anchor="middle">${escapeXml(this.spec.title)}</text>`,
			);
		}
		if (this.spec.xLabel) {
			bits.push(
				`<text x="${fmt(left + this.innerWidth / 2)}" y="${fmt(top + this.innerHeight + 32)}" ` +
					`font-size="11" text-anchor="middle">${escapeXml(this.spec.xLabel)}</text>`,
			);
		}
		if (this.spec.yLabel) {
			const yx = 14;
			const yy = top + this.innerHeight / 2;
			bits.push(
				`<text x="${fmt(yx)}" y="${fmt(yy)}" font-size="11" text-anchor="middle" ` +
					`transform="rotate(-90 ${fmt(yx)} ${fmt(yy)})">${escapeXml(this.spec.yLabel)}</text>`,
			);
		}
		return `<g font-family="sans-serif">${bits.join("")}</g>`;
	}

	render(offsetX = 0, offsetY = 0): string {
		return `<g transform="translate(${fmt(offsetX)} ${fmt(offsetY)})">${this.frame()}${this.parts.join("")}</g>`;
	}
}

export function ticks(min: number, max: number, target = 5): number[] {
	const span = max - min;
	if (!(span > 0)) return [min];
	const rawStep = span / target;
	const mag = 10 ** Math.floor(Math.log10(rawStep));
	let step = mag;
	for (const m of [1, 2, 5, 10]) {
		if (m * mag >= rawStep) {
			step = m * mag;
			break;
		}
	}
	const out: number[] = [];
	let t = Math.ceil(min / step) * step;
	for (; t <= max + 1e-12 * span; t += step) {
		out.push(Math.abs(t) < 1e-12 * span ? 0 : t);
	}
	return out;
}

export function viridisLike(t: number): string {
	// compact 5-stop interpolation, deterministic and dependency-free
	const stops: Array<[number, [number, number, number]]> = [
		[0.0, [68, 1, 84]],
		[0.25, [59, 82, 139]],
		[0.5, [33, 145, 140]],
		[0.75, [94, 201, 98]],
		[1.0, [253, 231, 37]],
	];
	for (let i = 1; i < stops.length; i++) {
		const [t1, c1] = stops[i]!;
		const [t0, c0] = stops[i - 1]!;
		if (t <= t1) {
			const u = (t - t0) / (t1 - t0);
			const rgb = c0.map((a, k) => Math.round(a + u * (c1[k]! - a)));
			return `rgb(${rgb[0]},${rgb[1]},${rgb[2]})`;
		}
	}
	return "rgb(253,231,37)";
}

export function divergingMap(t: number): string {
	// blue (negative) through white to red (positive)
	const u = Math.max(0, Math.min(1, t));
	const mix = (a: number, b: number, w: number) => Math.round(a + (b - a) * w);
	if (u < 0.5) {
		const w = u / 0.5;
		return `rgb(${mix(33, 247, w)},${mix(102, 247, w)},${mix(172, 247, w)})`;
	}
	const w = (u - 0.5) / 0.5;
	return `rgb(${mix(247, 178, w)},${mix(247, 24, w)},${mix(247, 43, w)})`;
}

export function document(width: number, height: number, body: string): string {
	return (
		`<svg xmlns="http://www.w3.org/2000/svg" width="${fmt(width)}" height="${fmt(height)}" ` +
		`viewBox="0 0 ${fmt(width)} ${fmt(height)}">` +
		`<rect width="100%" height="100%" fill="white"/>${body}</svg>\n`
	);
}

export function escapeXml(s: string): string {
	return s
		.replace(/&/g, "&amp;")
		.replace(/</g, "&lt;")
		.replace(/>/g, "&gt;")
		.replace(/"/g, "&quot;");
}
