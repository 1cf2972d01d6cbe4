/* tslint:disable */
/* eslint-disable */

export class Workbench {
    free(): void;
    [Symbol.dispose](): void;
    beta(): number;
    edge_length(): number;
    /**
     * One key press, e.g. `("4", false)` or `("c", true)`.
     */
    key(symbol: string, shifted: boolean): void;
    /**
     * The current slice, or an `error` message when it degenerates.
     */
    mesh_json(): string;
    constructor(edge_length: number, theta0: number);
    param(name: string): number;
    reset(): void;
    run_script(script: string): number;
    /**
     * `theta0`, `alpha`, `c0`, `step_alpha` or `step_c0`.
     */
    set_param(name: string, value: number): void;
    state_json(): string;
}

export function script_events(script: string): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_workbench_free: (a: number, b: number) => void;
    readonly script_events: (a: number, b: number) => [number, number, number, number];
    readonly workbench_beta: (a: number) => number;
    readonly workbench_edge_length: (a: number) => number;
    readonly workbench_key: (a: number, b: number, c: number, d: number) => [number, number];
    readonly workbench_mesh_json: (a: number) => [number, number];
    readonly workbench_new: (a: number, b: number) => [number, number, number];
    readonly workbench_param: (a: number, b: number, c: number) => number;
    readonly workbench_reset: (a: number) => void;
    readonly workbench_run_script: (a: number, b: number, c: number) => [number, number, number];
    readonly workbench_set_param: (a: number, b: number, c: number, d: number) => [number, number];
    readonly workbench_state_json: (a: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
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
