// Bindings for the optseg engine, built entirely on its public surfaces:
// the rank-file format for vocabulary metadata and the CLI (`encode`,
// `compare`, `analyze`) for segmentation and metrics. No engine internals
// are touched, so handles stay valid across engine versions that keep
// those interfaces stable.

import { execFile, execFileSync } from "node:child_process";
import { accessSync, mkdtempSync, readFileSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { promisify } from "node:util";
import { gunzipSync } from "node:zlib";

const execFileAsync = promisify(execFile);

/** Segmentation mode accepted by the engine. */
export type Mode = "greedy" | "optimal";

/** Vocabulary tiers with built-in rank-file names. */
export const TIER_FILES: Record<string, string> = {
  "50k": "gpt2.tiktoken",
  "100k": "cl100k_base.tiktoken",
  "200k": "o200k_base.tiktoken",
};

const MAX_BUFFER = 256 * 1024 * 1024;
const RANK_LINE = /^[A-Za-z0-9+/]+={0,2} \d+$/;

export interface LoadOptions {
  /** Directory holding tier rank files; defaults to $OPTSEG_VOCAB_DIR. */
  vocabDir?: string;
  /** CLI executable; defaults to $OPTSEG_CLI or "optseg" on PATH. */
  cliPath?: string;
}

interface EncodeRow {
  doc: number;
  ids: number[];
  pieces: string[];
  count: number;
}

interface CompareRow {
  doc_id: string;
  tokens_greedy: number;
  tokens_optimal: number;
  tsr: number;
}

function resolveRankFile(tierOrPath: string, vocabDir?: string): string {
  const dir = vocabDir ?? process.env.OPTSEG_VOCAB_DIR;
  const candidates: string[] = [];
  if (tierOrPath in TIER_FILES) {
    if (!dir) {
      throw new Error(
        `cannot resolve tier ${tierOrPath}: no vocabDir given and ` +
        `$OPTSEG_VOCAB_DIR is unset`);
    }
    const name = TIER_FILES[tierOrPath];
    candidates.push(join(dir, name), join(dir, name + ".gz"));
  } else {
    candidates.push(tierOrPath);
  }
  for (const path of candidates) {
    try {
      accessSync(path);
      return path;
    } catch {
      /* try next candidate */
    }
  }
  throw new Error(`rank file not found (tried: ${candidates.join(", ")})`);
}

function readRankFile(path: string): { vocabSize: number; maxTokenLen: number } {
  let data: Buffer;
  try {
    data = readFileSync(path);
  } catch (err) {
    throw new Error(`cannot read rank file ${path}: ${(err as Error).message}`);
  }
  if (data[0] === 0x1f && data[1] === 0x8b) {
    data = gunzipSync(data);
  }
  const lines = data.toString("ascii").split("\n");
  let vocabSize = 0;
  let maxTokenLen = 0;
  for (let i = 0; i < lines.length; i++) {
    const line = lines[i].trim();
    if (!line) continue;
    if (!RANK_LINE.test(line)) {
      throw new Error(`${path}:${i + 1}: malformed rank-file line`);
    }
    const token = Buffer.from(line.split(" ")[0], "base64");
    if (token.length === 0) {
      throw new Error(`${path}:${i + 1}: empty token`);
    }
    if (token.length > maxTokenLen) maxTokenLen = token.length;
    vocabSize++;
  }
  if (vocabSize === 0) {
    throw new Error(`${path}: vocabulary may not be empty`);
  }
  return { vocabSize, maxTokenLen };
}

/**
 * Immutable handle over one loaded vocabulary tier.
 *
 * Every call shells out to the engine CLI and parses its machine-readable
 * output; the handle itself holds only resolved configuration, so calls
 * are reentrant and safe to issue concurrently.
 */
export class BoundTokenizer {
  readonly tier: string | null;
  readonly rankFilePath: string;
  readonly vocabSize: number;
  readonly maxTokenLen: number;
  private readonly cliPath: string;
  private readonly vocabDir?: string;

  constructor(tierOrPath: string, options: LoadOptions = {}) {
    this.tier = tierOrPath in TIER_FILES ? tierOrPath : null;
    this.rankFilePath = resolveRankFile(tierOrPath, options.vocabDir);
    const meta = readRankFile(this.rankFilePath);
    this.vocabSize = meta.vocabSize;
    this.maxTokenLen = meta.maxTokenLen;
    this.cliPath = options.cliPath ?? process.env.OPTSEG_CLI ?? "optseg";
    this.vocabDir = options.vocabDir;
  }

  private cliArgs(sub: string[]): string[] {
    // vocabulary flags must precede any `--` positional separator
    const vocabArgs = this.tier
      ? ["--tier", this.tier]
      : ["--vocab", this.rankFilePath];
    return [sub[0], ...vocabArgs, ...sub.slice(1)];
  }

  private env(): NodeJS.ProcessEnv {
    return this.vocabDir
      ? { ...process.env, OPTSEG_VOCAB_DIR: this.vocabDir }
      : process.env;
  }

  private runSync(args: string[], input?: string): string {
    try {
      return execFileSync(this.cliPath, args, {
        input,
        env: this.env(),
        maxBuffer: MAX_BUFFER,
        encoding: "utf8",
      });
    } catch (err) {
      const e = err as { stderr?: string; message: string };
      throw new Error(e.stderr?.trim() || e.message);
    }
  }

  /** Token ids for `text` in the given mode; [] for the empty string. */
  encode(text: string, mode: Mode): number[] {
    checkMode(mode);
    const out = this.runSync(
      this.cliArgs(["encode", "--mode", mode, "--format", "json", "--", text]));
    return parseEncodeRows(out).flatMap((row) => row.ids);
  }

  /** Decoded piece strings for `text` (lossy for partial UTF-8 tokens). */
  encodePieces(text: string, mode: Mode): string[] {
    checkMode(mode);
    const out = this.runSync(
      this.cliArgs(["encode", "--mode", mode, "--format", "json", "--", text]));
    return parseEncodeRows(out).flatMap((row) => row.pieces);
  }

  /** Like encode(), but resolves asynchronously. */
  async encodeAsync(text: string, mode: Mode): Promise<number[]> {
    checkMode(mode);
    const { stdout } = await execFileAsync(
      this.cliPath,
      this.cliArgs(["encode", "--mode", mode, "--format", "json", "--", text]),
      { env: this.env(), maxBuffer: MAX_BUFFER });
    return parseEncodeRows(stdout).flatMap((row) => row.ids);
  }

  /**
   * Token ids per line for a batch of newline-free texts, via one engine
   * invocation. Same ids as per-text encode() calls.
   */
  encodeBatch(texts: string[], mode: Mode): number[][] {
    checkMode(mode);
    for (const t of texts) {
      if (t.includes("\n")) {
        throw new Error("encodeBatch texts must not contain newlines");
      }
    }
    if (texts.length === 0) return [];
    const out = this.runSync(
      this.cliArgs(["encode", "--mode", mode, "--format", "json", "--file", "-"]),
      texts.join("\n") + "\n");
    const ids: number[][] = texts.map(() => []);
    for (const row of parseEncodeRows(out)) {
      ids[row.doc].push(...row.ids);
    }
    return ids;
  }

  /**
   * Token saving ratio of minimal-token over greedy segmentation for one
   * document. Throws on empty/whitespace-only text (the metric is
   * undefined at zero tokens).
   */
  tsr(text: string): number {
    if (text.length === 0) {
      throw new Error("tsr is undefined for empty text (zero tokens)");
    }
    if (!text.includes("\n")) {
      const out = this.runSync(
        this.cliArgs(["compare", "--format", "json", "-"]), text + "\n");
      const rows = parseCompareRows(out);
      if (rows.length !== 1) {
        throw new Error(`expected one comparison row, got ${rows.length}`);
      }
      return rows[0].tsr;
    }
    return this.tsrWholeFile(text);
  }

  /** Greedy/optimal counts and TSR per newline-free document. */
  tsrBatch(texts: string[]): CompareRow[] {
    for (const t of texts) {
      if (t.includes("\n")) {
        throw new Error("tsrBatch texts must not contain newlines");
      }
    }
    if (texts.length === 0) return [];
    const out = this.runSync(
      this.cliArgs(["compare", "--format", "json", "-"]),
      texts.join("\n") + "\n");
    return parseCompareRows(out);
  }

  private tsrWholeFile(text: string): number {
    if (!this.tier) {
      // explicit-path handles: derive from one encode per mode; integer
      // division in doubles matches the engine's exact-fraction rounding
      const greedy = this.encode(text, "greedy").length;
      const optimal = this.encode(text, "optimal").length;
      if (greedy === 0) {
        throw new Error("tsr is undefined for empty text (zero tokens)");
      }
      return (greedy - optimal) / greedy;
    }
    // multi-line documents go through the corpus analyzer's raw-file mode
    const dir = mkdtempSync(join(tmpdir(), "optseg-client-"));
    try {
      const docPath = join(dir, "doc.txt");
      writeFileSync(docPath, text, "utf8");
      const cfg = {
        tier: this.tier ?? undefined,
        metrics: ["tsr"],
        format: "json",
        output_dir: join(dir, "report"),
        sources: [{ path: docPath, format: "raw-file", language_tag: "doc" }],
      };
      const cfgPath = join(dir, "cfg.json");
      writeFileSync(cfgPath, JSON.stringify(cfg), "utf8");
      this.runSync(["analyze", "--config", cfgPath]);
      const payload = JSON.parse(
        readFileSync(join(dir, "report", "tsr_by_language.json"), "utf8"));
      const micro = payload.reports[0]?.micro_tsr;
      if (micro === null || micro === undefined) {
        throw new Error("tsr is undefined for empty text (zero tokens)");
      }
      return micro;
    } finally {
      rmSync(dir, { recursive: true, force: true });
    }
  }
}

function checkMode(mode: string): void {
  if (mode !== "greedy" && mode !== "optimal") {
    throw new Error(`invalid mode ${JSON.stringify(mode)}; ` +
      `expected "greedy" or "optimal"`);
  }
}

function parseEncodeRows(out: string): EncodeRow[] {
  return out.split("\n").filter(Boolean).map((line) => JSON.parse(line));
}

function parseCompareRows(out: string): CompareRow[] {
  return out.split("\n").filter(Boolean).map((line) => JSON.parse(line));
}

/** Load a vocabulary tier ("50k" | "100k" | "200k") or an explicit rank-file path. */
export function load(tierOrPath: string, options: LoadOptions = {}): BoundTokenizer {
  return new BoundTokenizer(tierOrPath, options);
}
