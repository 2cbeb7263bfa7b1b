/*
   Copyright 2026 The dpdecomp Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dpdecomp {

// Root of every error this library throws. Callers that only need to
// distinguish "bad input" from "broken invariant" can catch the two
// intermediate classes below.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

// The input violates a documented precondition or validation rule.
class ValidationError : public Error {
   public:
    using Error::Error;
};

class InvalidInput : public ValidationError {
   public:
    using ValidationError::ValidationError;
};

class DivisionByZero : public ValidationError {
   public:
    DivisionByZero() : ValidationError("division by zero in GF(p)") {}
};

class ShapeError : public ValidationError {
   public:
    using ValidationError::ValidationError;
};

class NotDecomposable : public ValidationError {
   public:
    NotDecomposable(std::string factor, std::string msg)
        : ValidationError(std::move(msg)), factor_(std::move(factor)) {}
    const std::string& factor() const noexcept { return factor_; }

   private:
    std::string factor_;
};

class NotDirectSum : public ValidationError {
   public:
    using ValidationError::ValidationError;
};

class NotInvariant : public ValidationError {
   public:
    NotInvariant(std::size_t part, std::string msg)
        : ValidationError(std::move(msg)), part_(part) {}
    std::size_t part() const noexcept { return part_; }

   private:
    std::size_t part_;
};

class NotSeparableCost : public ValidationError {
   public:
    using ValidationError::ValidationError;
};

class PreconditionFailed : public ValidationError {
   public:
    using ValidationError::ValidationError;
};

class IllConditioned : public ValidationError {
   public:
    using ValidationError::ValidationError;
};

// A proved implication failed on a concrete instance. This always means a
// bug in the library, never a property of the instance.
class TheoremViolation : public Error {
   public:
    using Error::Error;
};

}  // namespace dpdecomp
