/* Figure recipes: one renderer per preset bundle.
 *
 * A recipe names its input CSVs relative to a run directory and builds a
 * complete SVG string; it never recomputes statistics, it only draws what the
 * primary component wrote. Missing files or columns raise SchemaError.
 */

import { existsSync } from "node:fs";
import { join } from "node:path";

import { column, DataFile, readCsv, requireRows, SchemaError } from "./csv.js";
import {
	divergingMap,
	document,
	padExtent,
	PALETTE,
	Panel,
	viridisLike,
} from "./svg.js";

export interface FigureRecipe {
	id: string;
	inputs: string[];
	render: (dir: string) => string;
}

function load(dir: string, name: string): DataFile {
	const path = join(dir, name);
	if (!existsSync(path)) {
		throw new SchemaError(`${path}: input file missing`);
	}
	const file = readCsv(path);
	requireRows(file, path);
	return file;
}

function strided<T>(xs: T[], maxPoints: number): T[] {
	if (xs.length <= maxPoints) return xs;
	const step = Math.ceil(xs.length / maxPoints);
	const out: T[] = [];
	for (let i = 0; i < xs.length; i += step) out.push(xs[i]!);
	return out;
}

/* fig2a: eigenvalue flow in the complex plane, colored by damping */
function renderFlow(dir: string): string {
	const f = load(dir, "flow.csv");
	const re = column(f, "re", "flow.csv");
	const im = column(f, "im", "flow.csv");
	const gamma = column(f, "gamma", "flow.csv");
	const panel = new Panel({
		x: padExtent(re),
		y: padExtent(im),
		width: 520,
		height: 520,
		title: "eigenvalue flow under increasing damping",
		xLabel: "Re",
		yLabel: "Im",
	});
	const gmax = Math.max(...gamma, 1e-12);
	const idx = strided([...re.keys()], 30000);
	const buckets = new Map<string, { xs: number[]; ys: number[] }>();
	for (const i of idx) {
		const color = viridisLike(gamma[i]! / gmax);
		let b = buckets.get(color);
		if (!b) {
			b = { xs: [], ys: [] };
			buckets.set(color, b);
		}
		b.xs.push(re[i]!);
		b.ys.push(im[i]!);
	}
	for (const [color, b] of buckets) {
		panel.scatter(b.xs, b.ys, color, 1.1, 0.8);
	}
	return document(520, 520, panel.render());
}

/* fig2b / fig7 curves: integrated spacing distributions with references */
function renderIsqPanel(
	dir: string,
	curveFiles: Array<{ file: string; label: string }>,
	title: string,
): Panel {
	const panel = new Panel({
		x: { min: 0, max: 3 },
		y: { min: 0, max: 1.05 },
		width: 520,
		height: 420,
		title,
		xLabel: "s",
		yLabel: "I(s)",
	});
	const legend: Array<{ label: string; color: string }> = [];
	curveFiles.forEach((c, k) => {
		const f = load(dir, c.file);
		const x = column(f, "x", c.file);
		const y = column(f, "y", c.file);
		const color = PALETTE[k % PALETTE.length]!;
		panel.line(x, y, color, 1.6, c.label.includes("reference") ? "4 3" : undefined);
		legend.push({ label: c.label, color });
	});
	panel.legend(legend);
	return panel;
}

function renderFig2b(dir: string): string {
	const panel = renderIsqPanel(
		dir,
		[
			{ file: "isq.csv", label: "map spectra" },
			{ file: "isq_poisson.csv", label: "Poisson reference" },
			{ file: "isq_ginibre.csv", label: "Ginibre reference" },
		],
		"integrated nearest-neighbour spacing distribution",
	);
	return document(520, 420, panel.render());
}

function renderFig7(dir: string): string {
	const sectors = ["isq_q2.csv", "isq_q6.csv", "isq_q12.csv"].filter((f) =>
		existsSync(join(dir, f)),
	);
	if (sectors.length === 0) {
		throw new SchemaError(`${dir}: no sector curves isq_q*.csv found`);
	}
	const spec = load(dir, "sector_union.csv");
	const re = column(spec, "re", "sector_union.csv");
	const im = column(spec, "im", "sector_union.csv");
	const left = new Panel({
		x: { min: -1.1, max: 1.1 },
		y: { min: -1.1, max: 1.1 },
		width: 430,
		height: 430,
		title: "fixed-q sector eigenvalues",
		xLabel: "Re",
		yLabel: "Im",
	});
	const circle = [...Array(181).keys()].map((k) => (k * 2 * Math.PI) / 180);
	left.line(circle.map(Math.cos), circle.map(Math.sin), "#bbb", 1.0, "2 3");
	left.scatter(re, im, PALETTE[0]!, 2.2, 0.9);
	const right = renderIsqPanel(
		dir,
		[
			...sectors.map((f, i) => ({
				file: f,
				label: f.replace("isq_", "").replace(".csv", ""),
			})),
			{ file: "isq_poisson.csv", label: "Poisson reference" },
			{ file: "isq_ginibre.csv", label: "Ginibre reference" },
		],
		"sector-resolved I(s)",
	);
	return document(960, 430, left.render() + right.render(440, 0));
}

/* fig3: rescaled spectrum against the lemon boundary */
function renderFig3(dir: string): string {
	const spec = load(dir, "rescaled_000.csv");
	const bnd = load(dir, "boundary.csv");
	const re = column(spec, "re", "rescaled_000.csv");
	const im = column(spec, "im", "rescaled_000.csv");
	const bx = column(bnd, "re", "boundary.csv");
	const by = column(bnd, "im", "boundary.csv");
	const panel = new Panel({
		x: padExtent([...re, ...bx]),
		y: padExtent([...im, ...by]),
		width: 560,
		height: 440,
		title: "rescaled dissipative spectrum and universal support",
		xLabel: "Re",
		yLabel: "Im",
	});
	panel.scatter(re, im, PALETTE[0]!, 1.8, 0.7);
	panel.line(bx, by, PALETTE[1]!, 2.0);
	return document(560, 440, panel.render());
}

/* fig4: spacing-ratio density on the unit disk */
function renderFig4(dir: string): string {
	const f = load(dir, "csr_heatmap.csv");
	const x = column(f, "x", "csr_heatmap.csv");
	const y = column(f, "y", "csr_heatmap.csv");
	const v = column(f, "value", "csr_heatmap.csv");
	const bins = Number(f.header["bins"] ?? Math.round(Math.sqrt(x.length)));
	const cell = 2 / bins;
	const panel = new Panel({
		x: { min: -1.05, max: 1.05 },
		y: { min: -1.05, max: 1.05 },
		width: 480,
		height: 480,
		title: "complex spacing ratio density",
		xLabel: "Re z",
		yLabel: "Im z",
	});
	panel.cells(x, y, v, cell, cell, viridisLike, 0);
	const circle = [...Array(181).keys()].map((k) => (k * 2 * Math.PI) / 180);
	panel.line(circle.map(Math.cos), circle.map(Math.sin), "#fff", 1.2);
	return document(480, 480, panel.render());
}

/* fig5: ring-disk radii against the closed form */
function renderFig5(dir: string): string {
	const f = load(dir, "radii.csv");
	const p = column(f, "p", "radii.csv");
	const riE = column(f, "r_inner_emp", "radii.csv");
	const roE = column(f, "r_outer_emp", "radii.csv");
	const riT = column(f, "r_inner_theory", "radii.csv");
	const roT = column(f, "r_outer_theory", "radii.csv");
	const panel = new Panel({
		x: { min: 0, max: 1 },
		y: { min: 0, max: 1.05 },
		width: 520,
		height: 420,
		title: "diluted-unitary spectral radii",
		xLabel: "dilution p",
		yLabel: "radius",
	});
	panel.line(p, roT, PALETTE[0]!, 1.8);
	panel.line(p, riT, PALETTE[1]!, 1.8);
	panel.scatter(p, roE, PALETTE[0]!, 3.2, 1.0);
	panel.scatter(p, riE, PALETTE[1]!, 3.2, 1.0);
	panel.legend([
		{ label: "outer radius (theory/markers)", color: PALETTE[0]! },
		{ label: "inner radius (theory/markers)", color: PALETTE[1]! },
	]);
	return document(520, 420, panel.render());
}

/* fig6: mean-field vs trajectory Lyapunov maps on the (A, T) plane */
function renderFig6(dir: string): string {
	const f = load(dir, "lyap_map.csv");
	const a = column(f, "a_drive", "lyap_map.csv");
	const t = column(f, "period", "lyap_map.csv");
	const mf = column(f, "lambda_mf", "lyap_map.csv");
	const q = column(f, "lambda_qle", "lyap_map.csv");
	const aVals = [...new Set(a)].sort((u, v) => u - v);
	const tVals = [...new Set(t)].sort((u, v) => u - v);
	const cw = aVals.length > 1 ? aVals[1]! - aVals[0]! : 1;
	const ch = tVals.length > 1 ? tVals[1]! - tVals[0]! : 1;
	const mkPanel = (vals: number[], title: string, diverging: boolean): Panel => {
		const panel = new Panel({
			x: { min: aVals[0]! - cw, max: aVals[aVals.length - 1]! + cw },
			y: { min: tVals[0]! - ch, max: tVals[tVals.length - 1]! + ch },
			width: 460,
			height: 440,
			title,
			xLabel: "drive amplitude",
			yLabel: "period",
		});
		if (diverging) {
			const m = Math.max(...vals.map(Math.abs), 1e-9);
			panel.cells(a, t, vals.map((v) => v / (2 * m) + 0.5), cw, ch, divergingMap, 0, 1);
		} else {
			panel.cells(a, t, vals, cw, ch, viridisLike, 0);
		}
		return panel;
	};
	const left = mkPanel(mf, "mean-field Lyapunov exponent", true);
	const right = mkPanel(q, "trajectory reset-rate exponent", false);
	return document(940, 440, left.render() + right.render(470, 0));
}

export const RECIPES: Record<string, FigureRecipe> = {
	fig2a: { id: "fig2a", inputs: ["flow.csv"], render: renderFlow },
	fig2b: {
		id: "fig2b",
		inputs: ["isq.csv", "isq_poisson.csv", "isq_ginibre.csv"],
		render: renderFig2b,
	},
	fig3: { id: "fig3", inputs: ["rescaled_000.csv", "boundary.csv"], render: renderFig3 },
	fig4: { id: "fig4", inputs: ["csr_heatmap.csv"], render: renderFig4 },
	fig5: { id: "fig5", inputs: ["radii.csv"], render: renderFig5 },
	fig6: { id: "fig6", inputs: ["lyap_map.csv"], render: renderFig6 },
	fig7: {
		id: "fig7",
		inputs: ["sector_union.csv", "isq_poisson.csv", "isq_ginibre.csv"],
		render: renderFig7,
	},
};

export function render(figure: string, dir: string): string {
	const recipe = RECIPES[figure];
	if (!recipe) {
		throw new SchemaError(
			`unknown figure '${figure}' (have: ${Object.keys(RECIPES).join(", ")})`,
		);
	}
	return recipe.render(dir);
}
