"""Monte Carlo toolkit for thermal-noise memory bits.

Simulates two physical one-bit memories — a Johnson-noise-driven
capacitor cell and a bistable double-well coordinate — together with
exact per-trajectory energy ledgers, binary-channel information
measures, and the closed-form dissipation bounds they are compared
against.
"""

from .bounds import (BoundComparison, IceCubeModel, NoErasureError, anderson_bound,
                     brillouin_min_dissipation, ice_cube_erasure_energy,
                     memory_entropy_audit)
from .capacitor import (EraseRecord, ErasureExperimentConfig, ErasureReport,
                        WriteRecord, WriteTimeoutError, erase,
                        erase_dissipation_theory, partial_erase_error_prob,
                        read_bit, run_erasure_experiment, write_bit)
from .doublewell import (DoubleWellParams, EscapeInfeasibleError, RelaxationSeries,
                         em_step, heated_erase, measure_escape_time, relax_ensemble,
                         sample_well)
from .ensemble import EnsembleWorkerError, run_parallel_ensemble
from .infotheory import (BitChannelStats, InformationContent, bit_information,
                         estimate_error_prob, memory_entropy, nats_to_bits,
                         remaining_information, wilson_interval)
from .ou import (BOLTZMANN, CellParams, Trajectory, ou_sample_stationary, ou_step,
                 simulate_ou_path)
from .streams import RngStream, make_stream

__version__ = "0.1.0"
