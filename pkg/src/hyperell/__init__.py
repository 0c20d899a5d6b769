"""Hyperelliptic and bielliptic graphs: detection, symmetric embeddings and bounds."""

from __future__ import annotations

from .bounds import (BoundsReport, TreewidthResult, bounds_report, ckk_bound, gonality_witnesses,
                     grid_spectrum, laplacian_spectrum, series_parallel_check, spectral_lower_bound,
                     treewidth_exact)
from .catalog import CatalogEntry, HeckePattern, catalog, parse_hecke, read_hecke, reduced_dual_graph
from .drawing import (Drawing, drawing_from_json, drawing_to_json, drawing_to_svg, outer_face_inversion,
                      planar_drawing, verify_drawing)
from .embedder import embed_bielliptic, embed_hyperelliptic, embed_with_two_pairs, inductive_frames
from .errors import (BudgetExceeded, ContractViolation, CrossingError, GraphError, HyperellError,
                     InvalidWitnessError, NotMixingError, UnsupportedError)
from .generators import generate_bielliptic, generate_hyperelliptic
from .morphisms import (GraphMorphism, Involution, detect_bielliptic, detect_hyperelliptic,
                        enumerate_mixing_involutions, is_harmonic, is_mixing, quotient)
from .multigraph import MultiGraph, betti_genus, contract_bridges, delete_loops, find_bridges
from .structure import decompose
from .surface import RotationSystem, genus_distribution, is_planar, minimum_genus, trace_faces

__all__ = [name for name in dir() if not name.startswith("_") and name != "annotations"]
