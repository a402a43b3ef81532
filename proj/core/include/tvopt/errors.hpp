/*
 * Copyright 2026 The tvopt Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace tvopt {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Dimension mismatch or malformed matrix data.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// The Hankel data carries no identifiable dynamics (zero rank, or a
/// rank-deficient shifted observability block).
class NotIdentifiableError : public Error {
public:
    using Error::Error;
};

/// The transform-recovery system M vec(P) = Y_v does not pin P down.
class UnderdeterminedTransformError : public Error {
public:
    UnderdeterminedTransformError(long rank, long required)
        : Error("transform recovery is underdetermined: rank(M) = " + std::to_string(rank) +
                ", required " + std::to_string(required) + " (deficit " +
                std::to_string(required - rank) + ")"),
          rank_(rank), required_(required) {}

    [[nodiscard]] long rank() const noexcept { return rank_; }
    [[nodiscard]] long required() const noexcept { return required_; }
    [[nodiscard]] long deficit() const noexcept { return required_ - rank_; }

private:
    long rank_;
    long required_;
};

/// The recovered map P = T^{-1} is square but singular.
class SingularTransformError : public Error {
public:
    using Error::Error;
};

/// The similar realization is defective, so no diagonal form exists.
class CertificateUnavailableError : public Error {
public:
    using Error::Error;
};

/// The quadratic cost has no unique minimizer (H not positive definite).
class NoMinimizerError : public Error {
public:
    using Error::Error;
};

class DivergenceError : public Error {
public:
    DivergenceError(long t, long d, double norm)
        : Error("gradient descent diverged at t = " + std::to_string(t) + ", inner step d = " +
                std::to_string(d) + " (|x| = " + std::to_string(norm) + ")"),
          t_(t), d_(d) {}

    [[nodiscard]] long time() const noexcept { return t_; }
    [[nodiscard]] long inner_step() const noexcept { return d_; }

private:
    long t_;
    long d_;
};

/// No stationary point satisfying the reference tolerance was found.
class ReferenceUnavailableError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    IoError(const std::string& path, const std::string& what)
        : Error(path + ": " + what), path_(path) {}

    [[nodiscard]] const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

/// An error raised inside one phase of an end-to-end run, tagged with
/// that phase ("data collection", "subspace identification", ...).
class PipelineError : public Error {
public:
    PipelineError(std::string phase, const std::string& what)
        : Error(phase + ": " + what), phase_(std::move(phase)) {}

    [[nodiscard]] const std::string& phase() const noexcept { return phase_; }

private:
    std::string phase_;
};

}  // namespace tvopt
