"""Campaign geometry, MPC classification and PSO calibration of material parameters."""
from .campaign import (CampaignGeometry, Orientation, Plate, PoseGeometry, default_orientations,
                       horizontal_plane, mut_normal, pose_geometry, specular_point)
from .classify import (ClassifierConfig, Label, MpcRecord, SpecularRegion, classify_mpcs,
                       inside_region)
from .fit import (CalibBounds, CalibDataset, CalibSample, FitResult, ForwardModel,
                  aggregate_mpcs, classify_campaign, dataset_rmse, predict, pso_fit,
                  synth_dataset, synth_mpcs)
from .metrics import rmse_db, rrmse_db, sliding_average
from .pso import PsoResult, SwarmConfig, pso_minimize

__all__ = [
    "CampaignGeometry", "Orientation", "Plate", "PoseGeometry", "default_orientations",
    "horizontal_plane", "mut_normal", "pose_geometry", "specular_point",
    "ClassifierConfig", "Label", "MpcRecord", "SpecularRegion", "classify_mpcs", "inside_region",
    "CalibBounds", "CalibDataset", "CalibSample", "FitResult", "ForwardModel",
    "aggregate_mpcs", "classify_campaign", "dataset_rmse", "predict", "pso_fit",
    "synth_dataset", "synth_mpcs", "rmse_db", "rrmse_db", "sliding_average",
    "PsoResult", "SwarmConfig", "pso_minimize",
]
