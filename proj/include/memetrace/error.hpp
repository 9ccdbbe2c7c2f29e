#pragma once

#include <stdexcept>
#include <string>

namespace memetrace {

// Error categories shared by all modules. The CLI maps these onto its
// exit codes (input/parse failures vs. internal invariant violations).
enum class Errc {
    malformed_line,
    schema_violation,
    io_error,
    invalid_url,
    meme_mismatch,
    empty_input,
    insufficient_data,
    degenerate_labels,
    empty_dataset,
    invalid_params,
    invalid_seeds,
    missing_threshold,
    internal,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

} // namespace memetrace
