"""Ursell coefficients via T_G(1,0), dimer clusters on Z^2 and the monomer-dimer entropy series."""

from .clusters import Cluster, Dimer, canonicalize, enumerate_clusters, overlap_graph, psi_of_cluster
from .graph import SmallGraph, build_graph, edges_within, is_connected
from .series import (
    coeff_a,
    coeff_c,
    d1_closed_form,
    emit_table,
    eval_dimer_series,
    eval_lambda,
    reexpand_check,
)
from .strip import (
    StripModel,
    density,
    estimate_lambda2,
    free_energy,
    lambda_strip,
    pure_dimer_entropy,
    transfer_apply,
)
from .tutte import (
    connected_counts,
    tutte_10_bhkk,
    tutte_eval_delcon,
    tutte_full,
    ursell,
    ursell_brute,
)

__version__ = "0.1.0"
