/* Gallery: scan run directories, render every recognized bundle, index page. */

import { mkdirSync, readdirSync, readFileSync, statSync, writeFileSync } from "node:fs";
import { basename, join } from "node:path";

import { render, RECIPES } from "./recipes.js";
import { escapeXml } from "./svg.js";

export interface GalleryEntry {
	figure: string;
	runDir: string;
	output: string;
	inputs: string[];
}

interface Manifest {
	figure?: string;
	experiment?: string;
}

function readManifest(dir: string): Manifest | null {
	try {
		return JSON.parse(readFileSync(join(dir, "manifest.json"), "utf8")) as Manifest;
	} catch {
		return null;
	}
}

export function discover(root: string): Array<{ figure: string; runDir: string }> {
	const found: Array<{ figure: string; runDir: string }> = [];
	const self = readManifest(root);
	if (self?.figure && RECIPES[self.figure]) {
		found.push({ figure: self.figure, runDir: root });
	}
	for (const name of readdirSync(root).sort()) {
		const sub = join(root, name);
		if (!statSync(sub).isDirectory()) continue;
		const manifest = readManifest(sub);
		if (manifest?.figure && RECIPES[manifest.figure]) {
			found.push({ figure: manifest.figure, runDir: sub });
		}
	}
	return found;
}

export function renderAll(root: string, outDir: string): GalleryEntry[] {
	mkdirSync(outDir, { recursive: true });
	const entries: GalleryEntry[] = [];
	for (const { figure, runDir } of discover(root)) {
		const svg = render(figure, runDir);
		const output = join(outDir, `${figure}.svg`);
		writeFileSync(output, svg);
		entries.push({
			figure,
			runDir,
			output,
			inputs: RECIPES[figure]!.inputs.map((f) => join(runDir, f)),
		});
	}
	writeFileSync(join(outDir, "index.html"), indexPage(entries));
	return entries;
}

export function indexPage(entries: GalleryEntry[]): string {
	const items = entries
		.map(
			(e) =>
				`<section><h2>${escapeXml(e.figure)}</h2>` +
				`<p>run: <code>${escapeXml(e.runDir)}</code><br/>inputs: <code>` +
				e.inputs.map(escapeXml).join("</code>, <code>") +
				`</code></p><img src="${escapeXml(basename(e.output))}" alt="${escapeXml(e.figure)}"/></section>`,
		)
		.join("\n");
	return (
		"<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\"/>" +
		"<title>dqchaos figure gallery</title></head><body>\n" +
		`<h1>dqchaos figure gallery (${entries.length} figures)</h1>\n${items}\n</body></html>\n`
	);
}
