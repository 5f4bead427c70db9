#pragma once

#include <stdexcept>
#include <string>

namespace buneman {

enum class ErrorCode {
    // construction / parsing
    empty_ground_set,
    improper_split,
    duplicate_split,
    unknown_element,
    syntax_error,
    // pairwise split operations
    ground_set_mismatch,
    incompatible_pair,
    identical_splits,
    split_in_component,
    unknown_component,
    same_component,
    // relation machinery
    isolated_vertex,
    m1_violation,
    m2_violation,
    // graph operations
    cap_exceeded,
    system_mismatch,
    not_a_vertex,
    empty_subset,
    identical_vertices,
    // tree reduction
    degenerate_tree,
    // verification
    check_failure,
    internal_inconsistency,
};

inline const char* to_string(ErrorCode c) {
    switch (c) {
        case ErrorCode::empty_ground_set: return "EmptyGroundSet";
        case ErrorCode::improper_split: return "ImproperSplit";
        case ErrorCode::duplicate_split: return "DuplicateSplit";
        case ErrorCode::unknown_element: return "UnknownElement";
        case ErrorCode::syntax_error: return "SyntaxError";
        case ErrorCode::ground_set_mismatch: return "GroundSetMismatch";
        case ErrorCode::incompatible_pair: return "IncompatiblePair";
        case ErrorCode::identical_splits: return "IdenticalSplits";
        case ErrorCode::split_in_component: return "SplitInComponent";
        case ErrorCode::unknown_component: return "UnknownComponent";
        case ErrorCode::same_component: return "SameComponent";
        case ErrorCode::isolated_vertex: return "IsolatedVertex";
        case ErrorCode::m1_violation: return "M1Violation";
        case ErrorCode::m2_violation: return "M2Violation";
        case ErrorCode::cap_exceeded: return "CapExceeded";
        case ErrorCode::system_mismatch: return "SystemMismatch";
        case ErrorCode::not_a_vertex: return "NotAVertex";
        case ErrorCode::empty_subset: return "EmptySubset";
        case ErrorCode::identical_vertices: return "IdenticalVertices";
        case ErrorCode::degenerate_tree: return "DegenerateTree";
        case ErrorCode::check_failure: return "CheckFailure";
        case ErrorCode::internal_inconsistency: return "InternalInconsistency";
    }
    return "UnknownError";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message),
          code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

} // namespace buneman
