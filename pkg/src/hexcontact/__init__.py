"""Contact numbers of unit-ball packings on layered hexagonal grids and the
octahedral lattice: exact integer contact geometry, greedy and exhaustive
searches, and comparison against bundled reference tables."""

from .bounds import (
    KNOWN_CONTACTS,
    REFERENCE_GREEDY_HEX,
    REFERENCE_OCT_BETTER,
    ComparisonRow,
    KnownValue,
    Status,
    compare_tables,
    delta_vs_reference,
    known_c,
    literature_best,
    octahedral_bound,
    render_comparison,
    render_decade_table,
    trivial_upper,
)
from .contact import (
    Configuration,
    ContactReport,
    DuplicateBallError,
    LayerOutOfRangeError,
    contact_count,
    incremental_delta,
    prefix,
    read_jsonl,
    reflect_configuration,
    verify,
    write_jsonl,
)
from .lattice import (
    OCT,
    EpsilonSeq,
    Hexagonal,
    Lattice,
    Octahedral,
    Point,
    contact_threshold,
    descriptor,
    enumerate_grids,
    grid_id,
    is_contact,
    make_epsilon_seq,
    neighbors,
    orientation,
    parse_descriptor,
    reflect_point,
    scaled_sq_dist,
    seq_from_grid_id,
    to_cartesian,
    type_tally,
    uniform_stacking_seq,
)
from .search import (
    LEX,
    FrontierExhaustedError,
    GreedyParams,
    Lexicographic,
    SeededRandom,
    SweepRecord,
    Window,
    exhaustive,
    exhaustive_sweep,
    greedy,
    greedy_sweep,
    read_sweep_csv,
    unique_window_grids,
    write_sweep_csv,
)

__version__ = "0.1.0"
