/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_hexgame_free: (a: number, b: number) => void;
export const catalogNames: (a: number, b: number) => [number, number];
export const coveringHeatmap: (a: number, b: number, c: number, d: number) => [number, number, number, number];
export const hexgame_interface: (a: number) => [number, number, number, number];
export const hexgame_new: (a: number, b: number) => [number, number, number];
export const hexgame_play: (a: number, b: number, c: number) => [number, number, number, number];
export const hexgame_state: (a: number) => [number, number];
export const spernerTriangle: (a: number, b: number, c: number) => [number, number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __externref_drop_slice: (a: number, b: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_start: () => void;
