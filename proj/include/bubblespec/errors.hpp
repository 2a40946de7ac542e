#pragma once

#include <stdexcept>
#include <string>

namespace bubblespec {

class TruncationError : public std::invalid_argument {
public:
    TruncationError(const std::string& what, double s_inf)
        : std::invalid_argument(what), s_inf_(s_inf) {}
    double s_inf() const { return s_inf_; }

private:
    double s_inf_;
};

class ShootingError : public std::runtime_error {
public:
    ShootingError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

class RefinementNeeded : public std::runtime_error {
public:
    RefinementNeeded(const std::string& what, int suggested_mesh)
        : std::runtime_error(what), suggested_mesh_(suggested_mesh) {}
    int suggested_mesh() const { return suggested_mesh_; }

private:
    int suggested_mesh_;
};

class ConstraintViolation : public std::invalid_argument {
public:
    ConstraintViolation(const std::string& what, int index)
        : std::invalid_argument(what), index_(index) {}
    int index() const { return index_; }

private:
    int index_;
};

}  // namespace bubblespec
