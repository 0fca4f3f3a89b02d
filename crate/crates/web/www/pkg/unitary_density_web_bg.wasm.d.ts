/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_curve_free: (a: number, b: number) => void;
export const airy_pair: (a: number) => [number, number, number, number];
export const bulk_curve: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
export const curve_asymptotic: (a: number) => [number, number];
export const curve_exact: (a: number) => [number, number];
export const curve_limit: (a: number) => [number, number];
export const curve_max_abs_error: (a: number) => number;
export const curve_x: (a: number) => [number, number];
export const edge_curve: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_start: () => void;
