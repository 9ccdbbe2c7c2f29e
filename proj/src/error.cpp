#include "memetrace/error.hpp"

namespace memetrace {

const char* errc_name(Errc c) {
    switch (c) {
    case Errc::malformed_line: return "MalformedLine";
    case Errc::schema_violation: return "SchemaViolation";
    case Errc::io_error: return "IoError";
    case Errc::invalid_url: return "InvalidUrl";
    case Errc::meme_mismatch: return "MemeMismatch";
    case Errc::empty_input: return "EmptyInput";
    case Errc::insufficient_data: return "InsufficientData";
    case Errc::degenerate_labels: return "DegenerateLabels";
    case Errc::empty_dataset: return "EmptyDataset";
    case Errc::invalid_params: return "InvalidParams";
    case Errc::invalid_seeds: return "InvalidSeeds";
    case Errc::missing_threshold: return "MissingThreshold";
    case Errc::internal: return "InternalError";
    }
    return "UnknownError";
}

} // namespace memetrace
