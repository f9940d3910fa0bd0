// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace fdedit {

/// Base of every error thrown by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid parameter (sigma <= 0, mu <= 0, out-of-range weights, bad JSON...).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Image dimensions or channel counts do not match an operation's contract.
class ShapeError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    IoError(const std::string& path, const std::string& what)
        : Error(path + ": " + what), path_(path) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

/// Conjugate gradients stopped at max_iter; carries the residual it reached.
class SolverError : public Error {
public:
    SolverError(const std::string& what, double achieved_residual, int iterations)
        : Error(what), residual_(achieved_residual), iterations_(iterations) {}

    double achieved_residual() const noexcept { return residual_; }
    int iterations() const noexcept { return iterations_; }

private:
    double residual_;
    int iterations_;
};

/// The problem has no usable structure (e.g. all image gradients are zero).
class DegenerateError : public Error {
public:
    using Error::Error;
};

}  // namespace fdedit
