/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_workbench_free: (a: number, b: number) => void;
export const script_events: (a: number, b: number) => [number, number, number, number];
export const workbench_beta: (a: number) => number;
export const workbench_edge_length: (a: number) => number;
export const workbench_key: (a: number, b: number, c: number, d: number) => [number, number];
export const workbench_mesh_json: (a: number) => [number, number];
export const workbench_new: (a: number, b: number) => [number, number, number];
export const workbench_param: (a: number, b: number, c: number) => number;
export const workbench_reset: (a: number) => void;
export const workbench_run_script: (a: number, b: number, c: number) => [number, number, number];
export const workbench_set_param: (a: number, b: number, c: number, d: number) => [number, number];
export const workbench_state_json: (a: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
