/* tslint:disable */
/* eslint-disable */

export function degree1_heatmap(a_re: number, a_im: number, b_re: number, b_im: number, radius: number, n: number): Uint8Array;

/**
 * [re₁, im₁, re₂, im₂].
 */
export function degree1_zeros(a_re: number, a_im: number, b_re: number, b_im: number): Float64Array;

export function kernel_heatmap(formula: string, params: string, x0: number, x1: number, xi0: number, xi1: number, nx: number, nxi: number): Uint8Array;

export function step_forced_zero(mode: string, alpha: string): Float64Array;

export function step_heatmap(mode: string, alpha: string, x0: number, x1: number, xi0: number, xi1: number, nx: number, nxi: number): Uint8Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly degree1_heatmap: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly degree1_zeros: (a: number, b: number, c: number, d: number) => [number, number];
    readonly kernel_heatmap: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number, j: number) => [number, number, number, number];
    readonly step_forced_zero: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly step_heatmap: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number, j: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
