from pac4sac.core.pipeline import StepSource, TrainingPipeline

__all__ = ["StepSource", "TrainingPipeline"]
