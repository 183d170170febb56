import assert from "node:assert/strict";
import { mkdirSync, mkdtempSync, readFileSync, rmSync, writeFileSync } from "node:fs";
import { join } from "node:path";
import { tmpdir } from "node:os";
import { test } from "node:test";

import { discover, renderAll } from "../gallery.js";
import { ALL_FIGURES, makeBundle } from "./fixtures.js";

function makeTree(figures: readonly string[]): string {
	const root = mkdtempSync(join(tmpdir(), "gallery-"));
	for (const figure of figures) {
		makeBundle(join(root, `run_${figure}`), figure);
	}
	return root;
}

test("full preset tree renders one image per figure plus an index", () => {
	const root = makeTree(ALL_FIGURES);
	try {
		const out = join(root, "gallery");
		const entries = renderAll(root, out);
		assert.equal(entries.length, 7);
		const index = readFileSync(join(out, "index.html"), "utf8");
		for (const figure of ALL_FIGURES) {
			assert.ok(index.includes(`${figure}.svg`), `index missing ${figure}`);
			assert.ok(readFileSync(join(out, `${figure}.svg`), "utf8").startsWith("<svg"));
		}
		// inputs are listed on the index page
		assert.ok(index.includes("radii.csv"));
	} finally {
		rmSync(root, { recursive: true, force: true });
	}
});

test("re-render is byte-identical", () => {
	const root = makeTree(["fig4", "fig5"]);
	try {
		const out = join(root, "gallery");
		renderAll(root, out);
		const first = readFileSync(join(out, "fig4.svg"));
		renderAll(root, out);
		const second = readFileSync(join(out, "fig4.svg"));
		assert.ok(first.equals(second));
	} finally {
		rmSync(root, { recursive: true, force: true });
	}
});

test("partial tree gives a partial gallery; junk dirs are skipped", () => {
	const root = makeTree(["fig3"]);
	try {
		mkdirSync(join(root, "not_a_run"));
		writeFileSync(join(root, "not_a_run", "manifest.json"), "{broken");
		mkdirSync(join(root, "unknown_figure"));
		writeFileSync(
			join(root, "unknown_figure", "manifest.json"),
			JSON.stringify({ figure: "fig99" }),
		);
		const entries = renderAll(root, join(root, "gallery"));
		assert.deepEqual(entries.map((e) => e.figure), ["fig3"]);
	} finally {
		rmSync(root, { recursive: true, force: true });
	}
});

test("a run directory itself can be the root", () => {
	const root = mkdtempSync(join(tmpdir(), "gallery-single-"));
	try {
		makeBundle(root, "fig5");
		assert.deepEqual(discover(root).map((e) => e.figure), ["fig5"]);
	} finally {
		rmSync(root, { recursive: true, force: true });
	}
});
