"""Sovereign debt-credit networks: contagion matrices, expected loss and a
betweenness-weighted systemic risk index."""

from netrisk.errors import NetriskError
from netrisk.ingest import (
    ExposureRecord,
    Panel,
    RiskInputRecord,
    TransitionTable,
    build_panel,
    load_panel,
    parse_exposure_csv,
    parse_risk_inputs_csv,
    parse_transitions_csv,
)
from netrisk.netgraph import (
    CentralityVector,
    ExposureNetwork,
    betweenness,
    betweenness_exhaustive,
    build_network,
    density,
    network_from_adjacency,
)
from netrisk.riskcore import (
    RiskReport,
    RiskVectors,
    SriSeries,
    default_transition_matrix,
    network_default_probability,
    network_expected_loss,
    risk_report,
    risk_vectors,
    sri_series,
    systemic_risk_index,
)
from netrisk.mcsim import CascadeConfig, CascadeEstimate, simulate_expected_loss

__version__ = "0.1.0"
