"""Desk-scale laboratory for wrist-worn inertial pointing devices.

Submodules:
  sensing         six-axis IMU synthesis, ingestion, calibration, fusion
  transfer        orientation-to-cursor transfer function and presets
  operator_model  simulated human operator closing the pointing loop
  task            target-acquisition task, trials, experiment runner
  stats           movement-time statistics and difficulty indices
  harness         config files, session persistence, reports, CLI, intake API
"""

__version__ = "0.1.0"
