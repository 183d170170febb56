/* Tiny synthetic preset bundles following the documented CSV schemas. */

import { mkdirSync, writeFileSync } from "node:fs";
import { join } from "node:path";

export function writeCsv(
	dir: string,
	name: string,
	header: Record<string, unknown>,
	columns: string[],
	rows: number[][],
): void {
	mkdirSync(dir, { recursive: true });
	const body = rows.map((r) => r.join(",")).join("\n");
	writeFileSync(
		join(dir, name),
		`# ${JSON.stringify(header)}\n${columns.join(",")}\n${body}\n`,
	);
}

function curveRows(f: (x: number) => number, n = 40, xMax = 3): number[][] {
	return [...Array(n).keys()].map((k) => {
		const x = (k / (n - 1)) * xMax;
		return [x, f(x)];
	});
}

export function makeBundle(dir: string, figure: string): void {
	mkdirSync(dir, { recursive: true });
	writeFileSync(
		join(dir, "manifest.json"),
		JSON.stringify({ figure, experiment: "synthetic", seed: 1 }),
	);
	const isq = (s: number) => 1 - Math.exp(-(Math.PI * s * s) / 4);
	switch (figure) {
		case "fig2a": {
			const rows: number[][] = [];
			for (let step = 0; step < 20; step++) {
				for (let traj = 0; traj < 8; traj++) {
					const phi = (2 * Math.PI * traj) / 8;
					const r = 1 - step / 40;
					rows.push([step, step * 0.01, traj, r * Math.cos(phi), r * Math.sin(phi)]);
				}
			}
			writeCsv(dir, "flow.csv", { experiment: "ghs" }, ["step", "gamma", "traj", "re", "im"], rows);
			break;
		}
		case "fig2b":
			writeCsv(dir, "isq.csv", { statistic: "integrated_spacing" }, ["x", "y"], curveRows(isq));
			writeCsv(dir, "isq_poisson.csv", { statistic: "poisson_reference" }, ["x", "y"], curveRows(isq));
			writeCsv(dir, "isq_ginibre.csv", { statistic: "ginibre_reference" }, ["x", "y"],
				curveRows((s) => Math.min(1, (s / 1.4) ** 4)));
			break;
		case "fig3": {
			const spec: number[][] = [];
			for (let k = 0; k < 60; k++) {
				const th = (2 * Math.PI * k) / 60;
				spec.push([0.9 * Math.cos(th), 0.5 * Math.sin(th)]);
			}
			writeCsv(dir, "rescaled_000.csv", { kind: "spectrum" }, ["re", "im"], spec);
			const bnd: number[][] = [];
			for (let k = 0; k <= 90; k++) {
				const th = (2 * Math.PI * k) / 90;
				bnd.push([2 * Math.cos(th), 0.83 * Math.sin(th)]);
			}
			writeCsv(dir, "boundary.csv", { curve: "lemon_boundary" }, ["re", "im"], bnd);
			break;
		}
		case "fig4": {
			const rows: number[][] = [];
			const bins = 11;
			for (let i = 0; i < bins; i++) {
				for (let j = 0; j < bins; j++) {
					const x = -1 + (2 * (i + 0.5)) / bins;
					const y = -1 + (2 * (j + 0.5)) / bins;
					const r2 = x * x + y * y;
					rows.push([x, y, r2 <= 1 ? r2 : 0]);
				}
			}
			writeCsv(dir, "csr_heatmap.csv", { statistic: "csr_density", bins }, ["x", "y", "value"], rows);
			break;
		}
		case "fig5": {
			const rows: number[][] = [];
			for (let k = 0; k <= 10; k++) {
				const p = k / 10;
				const ro = Math.sqrt(((1 - p) ** 2 * 4 + p * p) / 4);
				const ri2 = ((1 - p) ** 2 * 4 - p * p) / 4;
				const ri = ri2 > 0 ? Math.sqrt(ri2) : 0;
				rows.push([p, ri + 0.01, ro - 0.01, ri, ro, ri2 > 0 ? 0 : 1]);
			}
			writeCsv(dir, "radii.csv", { N: 50, d: 4 },
				["p", "r_inner_emp", "r_outer_emp", "r_inner_theory", "r_outer_theory", "disk"], rows);
			break;
		}
		case "fig6": {
			const rows: number[][] = [];
			for (let i = 0; i < 5; i++) {
				for (let j = 0; j < 5; j++) {
					const lam = Math.sin(i) * Math.cos(j) * 0.1;
					rows.push([0.2 + 0.4 * i, 1 + 2 * j, lam, Math.max(lam, 0), 0.01, 3, 1.4, 0]);
				}
			}
			writeCsv(dir, "lyap_map.csv", { experiment: "kerr" },
				["a_drive", "period", "lambda_mf", "lambda_qle", "qle_stderr", "resets",
					"alpha_fit", "reject_flag"], rows);
			break;
		}
		case "fig7": {
			const spec: number[][] = [];
			for (let k = 0; k < 40; k++) {
				const th = (2 * Math.PI * k) / 40;
				spec.push([0.8 * Math.cos(th), 0.8 * Math.sin(th)]);
			}
			writeCsv(dir, "sector_union.csv", { kind: "spectrum" }, ["re", "im"], spec);
			for (const q of [2, 6, 12]) {
				writeCsv(dir, `isq_q${q}.csv`, { sector: `q=${q}` }, ["x", "y"],
					curveRows((s) => Math.min(1, (s / (1 + q / 20)) ** 2)));
			}
			writeCsv(dir, "isq_poisson.csv", { statistic: "poisson_reference" }, ["x", "y"], curveRows(isq));
			writeCsv(dir, "isq_ginibre.csv", { statistic: "ginibre_reference" }, ["x", "y"],
				curveRows((s) => Math.min(1, (s / 1.4) ** 4)));
			break;
		}
		default:
			throw new Error(`no fixture for ${figure}`);
	}
}

export const ALL_FIGURES = ["fig2a", "fig2b", "fig3", "fig4", "fig5", "fig6", "fig7"] as const;
