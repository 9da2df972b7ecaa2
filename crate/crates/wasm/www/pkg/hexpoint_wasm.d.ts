/* tslint:disable */
/* eslint-disable */

export class HexGame {
    free(): void;
    [Symbol.dispose](): void;
    interface(): string;
    constructor(k: number, vs_solver: boolean);
    play(z1: number, z2: number): string;
    state(): string;
}

export function catalogNames(domain: string): string[];

export function coveringHeatmap(map: string, k: number, eps: number): string;

export function spernerTriangle(map: string, n: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_hexgame_free: (a: number, b: number) => void;
    readonly catalogNames: (a: number, b: number) => [number, number];
    readonly coveringHeatmap: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly hexgame_interface: (a: number) => [number, number, number, number];
    readonly hexgame_new: (a: number, b: number) => [number, number, number];
    readonly hexgame_play: (a: number, b: number, c: number) => [number, number, number, number];
    readonly hexgame_state: (a: number) => [number, number];
    readonly spernerTriangle: (a: number, b: number, c: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __externref_drop_slice: (a: number, b: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __externref_table_dealloc: (a: number) => void;
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
