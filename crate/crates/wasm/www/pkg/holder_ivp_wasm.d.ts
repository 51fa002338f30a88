/* tslint:disable */
/* eslint-disable */

/**
 * Error and cost over a doubling grid of step counts, with fitted slopes.
 */
export class ConvergenceStudy {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Fitted exponent of cost in `n`; boosted modes have the log factor
     * divided out first.
     */
    readonly cost_exponent: number;
    readonly costs: Float64Array;
    readonly errors: Float64Array;
    readonly n: Float64Array;
    readonly order: number;
}

/**
 * Histogram of simulated quantum estimates of `int_0^1 cos(pi u) du`,
 * single emissions against medians of `k` emissions.
 */
export class EmissionHistogram {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly boosted: Uint32Array;
    /**
     * Bin edges, measured as `(estimate - reference) / eps`.
     */
    readonly edges: Float64Array;
    readonly reference: number;
    readonly repetitions: number;
    readonly single: Uint32Array;
}

/**
 * Dense samples of one solve next to the reference solution.
 */
export class TrajectorySamples {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Component `j` of the computed solution at every sample time.
     */
    approx(j: number): Float64Array;
    /**
     * Component `j` of the reference solution; empty if there is none.
     */
    exact(j: number): Float64Array;
    /**
     * Classical evaluations plus oracle queries.
     */
    readonly cost: number;
    readonly dim: number;
    /**
     * `NaN` when the problem has no reference solution.
     */
    readonly sup_error: number;
    readonly t: Float64Array;
}

export function convergenceStudy(problem: string, r: number, rho: number, mode: string, n_max: number, seed: number): ConvergenceStudy;

export function emissionHistogram(eps: number, trials: number, delta: number, n: number, bins: number, seed: number): EmissionHistogram;

export function problemNames(): string[];

export function solveTrajectory(problem: string, r: number, rho: number, mode: string, n: number, seed: number, samples_per_step: number): TrajectorySamples;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_convergencestudy_free: (a: number, b: number) => void;
    readonly __wbg_emissionhistogram_free: (a: number, b: number) => void;
    readonly __wbg_trajectorysamples_free: (a: number, b: number) => void;
    readonly convergenceStudy: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number) => [number, number, number];
    readonly convergencestudy_cost_exponent: (a: number) => number;
    readonly convergencestudy_costs: (a: number) => [number, number];
    readonly convergencestudy_errors: (a: number) => [number, number];
    readonly convergencestudy_n: (a: number) => [number, number];
    readonly convergencestudy_order: (a: number) => number;
    readonly emissionHistogram: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
    readonly emissionhistogram_boosted: (a: number) => [number, number];
    readonly emissionhistogram_edges: (a: number) => [number, number];
    readonly emissionhistogram_repetitions: (a: number) => number;
    readonly emissionhistogram_single: (a: number) => [number, number];
    readonly problemNames: () => [number, number];
    readonly solveTrajectory: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number) => [number, number, number];
    readonly trajectorysamples_approx: (a: number, b: number) => [number, number];
    readonly trajectorysamples_dim: (a: number) => number;
    readonly trajectorysamples_exact: (a: number, b: number) => [number, number];
    readonly trajectorysamples_t: (a: number) => [number, number];
    readonly emissionhistogram_reference: (a: number) => number;
    readonly trajectorysamples_cost: (a: number) => number;
    readonly trajectorysamples_sup_error: (a: number) => number;
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __externref_drop_slice: (a: number, b: number) => void;
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
