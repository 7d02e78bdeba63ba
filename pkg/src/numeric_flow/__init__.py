# Intégration numérique: RK4, moniteurs de conservation, oracle de rotation
from src.numeric_flow.rotation import exact_rotation
from src.numeric_flow.field import CompiledField, compile_field
from src.numeric_flow.monitors import MonitorSet, MonitorSummary, build_monitors, monitor_report
from src.numeric_flow.integrator import (
    PhaseState,
    Trajectory,
    alpha_grid,
    integrate,
    integrate_batch,
)
from src.numeric_flow.flows import phase_flow, lie_flow, complete_initial_state
from src.numeric_flow.export import trajectory_header, trajectory_rows, write_trajectory_csv
