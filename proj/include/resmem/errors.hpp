#pragma once

#include <stdexcept>
#include <string>

namespace resmem {

/// Base class for all library errors.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

class integration_diverged_error : public error {
public:
    using error::error;
};

class degenerate_signal_error : public error {
public:
    using error::error;
};

class invalid_sparsity_error : public error {
public:
    using error::error;
};

class invalid_matrix_error : public error {
public:
    using error::error;
};

class invalid_input_error : public error {
public:
    using error::error;
};

class singular_system_error : public error {
public:
    using error::error;
};

class degenerate_target_error : public error {
public:
    using error::error;
};

class degenerate_state_error : public error {
public:
    using error::error;
};

class degenerate_response_error : public error {
public:
    using error::error;
};

class insufficient_data_error : public error {
public:
    using error::error;
};

class numerical_error : public error {
public:
    using error::error;
};

class not_adjacent_error : public error {
public:
    using error::error;
};

class empty_graph_error : public error {
public:
    using error::error;
};

class calibration_failed_error : public error {
public:
    using error::error;
};

}  // namespace resmem
