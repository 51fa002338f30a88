/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_convergencestudy_free: (a: number, b: number) => void;
export const __wbg_emissionhistogram_free: (a: number, b: number) => void;
export const __wbg_trajectorysamples_free: (a: number, b: number) => void;
export const convergenceStudy: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number) => [number, number, number];
export const convergencestudy_cost_exponent: (a: number) => number;
export const convergencestudy_costs: (a: number) => [number, number];
export const convergencestudy_errors: (a: number) => [number, number];
export const convergencestudy_n: (a: number) => [number, number];
export const convergencestudy_order: (a: number) => number;
export const emissionHistogram: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
export const emissionhistogram_boosted: (a: number) => [number, number];
export const emissionhistogram_edges: (a: number) => [number, number];
export const emissionhistogram_repetitions: (a: number) => number;
export const emissionhistogram_single: (a: number) => [number, number];
export const problemNames: () => [number, number];
export const solveTrajectory: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number) => [number, number, number];
export const trajectorysamples_approx: (a: number, b: number) => [number, number];
export const trajectorysamples_dim: (a: number) => number;
export const trajectorysamples_exact: (a: number, b: number) => [number, number];
export const trajectorysamples_t: (a: number) => [number, number];
export const emissionhistogram_reference: (a: number) => number;
export const trajectorysamples_cost: (a: number) => number;
export const trajectorysamples_sup_error: (a: number) => number;
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __externref_drop_slice: (a: number, b: number) => void;
export const __wbindgen_start: () => void;
