#include "sparselag/error.hpp"

namespace sparselag {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::ok: return "ok";
    case ErrorCode::config: return "config";
    case ErrorCode::parse: return "parse";
    case ErrorCode::invalid_order: return "invalid-order";
    case ErrorCode::degenerate: return "degenerate";
    case ErrorCode::numerical: return "numerical";
    case ErrorCode::model_format: return "model-format";
    case ErrorCode::io: return "io";
    case ErrorCode::method_mismatch: return "method-mismatch";
    }
    return "unknown";
}

}  // namespace sparselag
