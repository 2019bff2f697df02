MATMUL_SHAPE_ERROR = "Cannot multiply matrices of shapes {left} and {right}."
COLUMN_MISMATCH_ERROR = "Matrices must have the same number of columns, got {left} and {right}."
ELEMENTWISE_SHAPE_ERROR = "Elementwise operation needs equal shapes, got {left} and {right}."
NON_FINITE_VALUE_ERROR = "Non-finite value produced by {where}."
NOT_A_MATRIX_ERROR = "Expected a 2-D matrix, got an array with {ndim} dimension(s)."
GRADCHECK_STEP_ERROR = "Finite-difference step must be positive, got {step}."

INPUT_DIM_ERROR = "Input has {got} features but the first layer expects {expected}."
EMPTY_VIEWS_ERROR = "A shape needs at least one view feature vector."
EMBEDDING_DIM_ERROR = "Embedding dimensions disagree: {left} vs {right}."
LAYER_CHAIN_ERROR = "Layer {index} expects {expected} inputs but the previous layer gives {got}."

CLASSIFIER_SIZE_ERROR = "A classifier needs at least two class centers, got {classes}."
LABEL_RANGE_ERROR = "Label {label} is outside [0, {classes})."
EMPTY_BATCH_ERROR = "Loss needs at least one sample."
UNFROZEN_CLASSIFIER_ERROR = "The transfer loss only accepts a frozen classifier."
MARGIN_RANGE_ERROR = "Margin must lie in [0, 1), got {margin}."
SCALE_RANGE_ERROR = "Scale must be positive, got {scale}."
NEGATIVE_LAMBDA_ERROR = "The KL weight must be non-negative, got {value}."

EPOCH_RANGE_ERROR = "Epoch {epoch} is outside the schedule [0, {total}]."
NEGATIVE_LR_ERROR = "Learning rate must be non-negative, got {lr}."
PARAM_COUNT_ERROR = "Got {params} parameters but {grads} gradients."
EMPTY_DATASET_ERROR = "The {stage} training set is empty."
CLASS_WITHOUT_SAMPLES_ERROR = "Classes {classes} have no training sketches."
NON_FINITE_LOSS_ERROR = "{stage} loss became non-finite at epoch {epoch}, batch {batch}; try a smaller learning rate."
SHAPE_CLASS_MISMATCH_ERROR = "Shape labels {labels} are not classes of the sketch classifier (C={classes})."

QUERY_DIM_ERROR = "Queries have dimension {queries} but the gallery has {gallery}."
EMPTY_GALLERY_ERROR = "The gallery is empty."
NO_RELEVANT_ERROR = "Query {query} has no relevant gallery item."
NO_EVALUABLE_QUERY_ERROR = "No query has a relevant gallery item."

NON_POSITIVE_VARIANCE_ERROR = "Variances must be positive, found {value}."
CONSTANT_SCORES_ERROR = "Uncertainty scores need at least two distinct values to be normalized."
BUCKET_BOUNDS_ERROR = "Bucket boundaries must satisfy 0 < low < high < 1, got {low} and {high}."

INFEASIBLE_PROTOTYPES_ERROR = ("Could not place {classes} prototypes with pairwise cosine below {limit} "
                               "in {dim} dimensions; use a larger --dim.")
MALFORMED_ROW_ERROR = "{path}, line {line}: {reason}"
MALFORMED_HEADER_ERROR = "{path}: malformed header ({reason})."
DUPLICATE_ID_ERROR = "duplicate sample id {sample_id}"
VALUE_COUNT_ERROR = "expected {expected} values, got {got}"
BAD_NUMBER_ERROR = "cannot parse number {value!r}"
BAD_FIELD_ERROR = "bad {field} {value!r}"
MISSING_FILE_ERROR = "Required file {path} does not exist."
KEY_VALUE_LINE_ERROR = "{path}, line {line}: expected key=value."

CHECKPOINT_MAGIC_ERROR = "{path} is not a checkpoint (missing {magic!r} header)."
CHECKPOINT_KIND_ERROR = "{path} holds a {found} model, expected {expected}."
CHECKPOINT_FORMAT_ERROR = "{path}, line {line}: {reason}"
CHECKPOINT_DIM_ERROR = "Checkpoint expects {expected}-dim inputs, the dataset has {got}."
MISSING_CENTERS_ERROR = "{path} carries no classifier.weight; stage 2 needs the frozen sketch class centers."

UNKNOWN_COMMAND_ERROR = "Unknown command {command!r}. Available: {choices}."
GRADCHECK_FAILED_ERROR = "Gradient check failed: {name} relative error {error:.3e} exceeds {tolerance:.1e}."

DIMS_FIELD_ERROR = "Expected comma separated positive integers."
HIDDEN_DIMS_REQUIRED_ERROR = "At least one hidden layer is required."
UNKNOWN_CONFIG_KEY_ERROR = "Unknown config key."
