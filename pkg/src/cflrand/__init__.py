"""Exact automata, language censuses, immunity probes, and a stack-machine
pseudorandom generator, all verified by enumeration at small word lengths."""

from .automata import (
    AdvisedDfa,
    Dfa,
    InputError,
    Pda,
    PdaTransition,
    ThreeVal,
    automaton_from_dict,
    automaton_to_dict,
    load_automaton,
    make_pda,
    save_automaton,
)
from .census import (
    CensusReport,
    CensusRow,
    PDenseResult,
    agreement,
    almost_equal_gap,
    census_report,
    closed_form_density,
    conditional_balance,
    density,
    dfa_census,
    nerode_lower_bound,
    pdense_check,
    signed_balance,
)
from .languages import (
    LanguageOracle,
    LengthClass,
    advice_word,
    advised_model,
    autoreduce,
    complement_of,
    empty_language,
    inner_product,
    length_class,
    oracle,
    oracle_from_dfa,
    universal_language,
)
from .probe import (
    ProbeReport,
    PumpDecomposition,
    SubsetStatus,
    Survivor,
    canonical_dfas,
    immunity_probe,
    pump_decompose,
    pump_refute,
    subset_witness,
)
from .prg import (
    fooling_bound_holds,
    fooling_gap,
    fooling_sweep,
    generate,
    generator_transducer,
    preimage_histogram,
    range_matches_ip_star,
    range_set,
    tau,
)
from .randomness import (
    IndexSeries,
    SwapPartition,
    WindowTable,
    brute_window_row,
    centered_series,
    delta_bound,
    delta_inequality_check,
    discrepancy_bound_check,
    growth_estimate,
    ip_discrepancy,
    series_count,
    series_max_check,
    swap_partition,
    swap_verify,
    window_table,
)
from .util import BudgetError, UndefinedRatioError

__version__ = "0.1.0"
