// Copyright 2026 The cftg Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CFTG_ERROR_HPP_
#define CFTG_ERROR_HPP_

#include <stdexcept>

namespace cftg {

// Malformed user input: bad letters, bad spec files, invalid structures.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition of an operation does not hold for otherwise valid input.
class DomainError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace cftg

#endif  // CFTG_ERROR_HPP_
