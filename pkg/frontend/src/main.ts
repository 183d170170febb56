/* CLI: render one run directory or a whole tree of preset outputs.
 *
 *   dqchaos-figs <directory> [--out <gallery-dir>]
 *   dqchaos-figs <run-dir> --figure fig5 [--out <file.svg>]
 */

import { writeFileSync } from "node:fs";
import { join } from "node:path";
import process from "node:process";

import { SchemaError } from "./csv.js";
import { renderAll } from "./gallery.js";
import { render } from "./recipes.js";

function main(argv: string[]): number {
	const args = [...argv];
	let figure: string | null = null;
	let out: string | null = null;
	const positional: string[] = [];
	while (args.length) {
		const a = args.shift()!;
		if (a === "--figure") figure = args.shift() ?? null;
		else if (a === "--out") out = args.shift() ?? null;
		else if (a === "--help" || a === "-h") {
			console.log("usage: dqchaos-figs <directory> [--figure figN] [--out path]");
			return 0;
		} else positional.push(a);
	}
	if (positional.length !== 1) {
		console.error("usage: dqchaos-figs <directory> [--figure figN] [--out path]");
		return 2;
	}
	const dir = positional[0]!;
	try {
		if (figure) {
			const svg = render(figure, dir);
			const target = out ?? join(dir, `${figure}.svg`);
			writeFileSync(target, svg);
			console.log(`wrote ${target}`);
			return 0;
		}
		const entries = renderAll(dir, out ?? join(dir, "gallery"));
		for (const e of entries) console.log(`wrote ${e.output}`);
		console.log(`gallery index: ${join(out ?? join(dir, "gallery"), "index.html")}`);
		if (entries.length === 0) {
			console.error("no recognized figure bundles found (missing manifest.json?)");
			return 1;
		}
		return 0;
	} catch (err) {
		if (err instanceof SchemaError) {
			console.error(`schema error: ${err.message}`);
			return 1;
		}
		throw err;
	}
}

process.exit(main(process.argv.slice(2)));
