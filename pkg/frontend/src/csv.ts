/* CSV-with-JSON-header reader for dqchaos data files.
 *
 * Files carry one `# {...}` comment line with provenance, then a column
 * header and numeric rows. Readers fail loudly on missing columns so a
 * schema drift in the producer cannot silently render an empty figure.
 */

import { readFileSync } from "node:fs";

export interface DataFile {
	header: Record<string, unknown>;
	columns: string[];
	rows: number[][];
}

export class SchemaError extends Error {}

export function parseCsv(text: string, path = "<memory>"): DataFile {
	const lines = text.split(/\r?\n/);
	let header: Record<string, unknown> = {};
	let columns: string[] | null = null;
	const rows: number[][] = [];
	for (const raw of lines) {
		const line = raw.trim();
		if (line.length === 0) continue;
		if (line.startsWith("#")) {
			if (Object.keys(header).length === 0) {
				const body = line.replace(/^#\s*/, "");
				try {
					header = JSON.parse(body) as Record<string, unknown>;
				} catch {
					throw new SchemaError(`${path}: unparseable JSON header: ${body}`);
				}
			}
			continue;
		}
		if (columns === null) {
			columns = line.split(",").map((c) => c.trim());
			continue;
		}
		const vals = line.split(",").map(Number);
		if (vals.some((v) => Number.isNaN(v))) {
			throw new SchemaError(`${path}: non-numeric row: ${line}`);
		}
		if (vals.length !== columns.length) {
			throw new SchemaError(
				`${path}: row has ${vals.length} fields, expected ${columns.length}`,
			);
		}
		rows.push(vals);
	}
	if (columns === null) {
		throw new SchemaError(`${path}: no column header found`);
	}
	return { header, columns, rows };
}

export function readCsv(path: string): DataFile {
	return parseCsv(readFileSync(path, "utf8"), path);
}

export function column(file: DataFile, name: string, path = "<data>"): number[] {
	const idx = file.columns.indexOf(name);
	if (idx < 0) {
		throw new SchemaError(
			`${path}: missing column '${name}' (have: ${file.columns.join(", ")})`,
		);
	}
	return file.rows.map((r) => r[idx]!);
}

export function requireRows(file: DataFile, path = "<data>"): void {
	if (file.rows.length === 0) {
		throw new SchemaError(`${path}: no data rows`);
	}
}
