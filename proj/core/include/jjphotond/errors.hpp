// Copyright 2026 The jjphotond Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace jjphotond {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad or inconsistent configuration. `keys()` lists the config keys involved.
class ConfigError : public Error {
public:
    ConfigError(const std::string& what, std::vector<std::string> keys = {})
        : Error(what), keys_(std::move(keys)) {}
    const std::vector<std::string>& keys() const noexcept { return keys_; }

private:
    std::vector<std::string> keys_;
};

class RangeError : public Error {
public:
    using Error::Error;
};

/// Integration could not produce a trustworthy state.
class IntegrationError : public Error {
public:
    using Error::Error;
};

/// Step size collapsed; the exact propagator is the better tool.
class StiffnessError : public IntegrationError {
public:
    using IntegrationError::IntegrationError;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

}  // namespace jjphotond
