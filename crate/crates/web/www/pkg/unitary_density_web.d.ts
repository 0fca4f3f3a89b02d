/* tslint:disable */
/* eslint-disable */

/**
 * Curves sampled on a common grid. Asymptotic values are clamped at zero
 * for plotting; `max_abs_error` is computed before clamping.
 */
export class Curve {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly asymptotic: Float64Array;
    readonly exact: Float64Array;
    readonly limit: Float64Array;
    readonly max_abs_error: number;
    readonly x: Float64Array;
}

/**
 * `[Ai(ξ), Ai'(ξ)]`.
 */
export function airy_pair(xi: number): Float64Array;

export function bulk_curve(ensemble: string, alpha: number, n: number, points: number, margin: number): Curve;

export function edge_curve(ensemble: string, alpha: number, n: number, points: number, xi_min: number, xi_max: number): Curve;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_curve_free: (a: number, b: number) => void;
    readonly airy_pair: (a: number) => [number, number, number, number];
    readonly bulk_curve: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
    readonly curve_asymptotic: (a: number) => [number, number];
    readonly curve_exact: (a: number) => [number, number];
    readonly curve_limit: (a: number) => [number, number];
    readonly curve_max_abs_error: (a: number) => number;
    readonly curve_x: (a: number) => [number, number];
    readonly edge_curve: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number];
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
