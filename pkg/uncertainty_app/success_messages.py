DATASET_WRITTEN_MESSAGE = "Dataset written to {path}."
SKETCH_MODEL_WRITTEN_MESSAGE = "Sketch model and frozen class centers written to {path}."
SHAPE_MODEL_WRITTEN_MESSAGE = "Shape model written to {path}."
EMBEDDINGS_WRITTEN_MESSAGE = "{count} embeddings written to {path}."
METRICS_WRITTEN_MESSAGE = "Metric report written to {path}."
UNCERTAINTY_WRITTEN_MESSAGE = "Uncertainty report written to {path}."
GRADCHECK_PASSED_MESSAGE = "All gradients agree with finite differences (max relative error {error:.3e})."
ABLATION_WRITTEN_MESSAGE = "Ablation results written to {path}."
