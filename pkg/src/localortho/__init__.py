"""Local orthogonality (LO) inequalities for multipartite Bell scenarios."""
from .scenario import Behavior, Event, Scenario, event_from_index, event_index, is_no_signaling, uniform_box

__all__ = ["Behavior", "Event", "Scenario", "event_from_index", "event_index", "is_no_signaling", "uniform_box"]

__version__ = "0.1.0"
