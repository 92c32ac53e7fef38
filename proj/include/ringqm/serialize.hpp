// Copyright 2026 The ringqm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <nlohmann/json.hpp>

#include "ringqm/mub.hpp"
#include "ringqm/pauli.hpp"

namespace ringqm {

using json = nlohmann::json;

// States serialize as a JSON array of [re, im] pairs in symmetric-index
// order (offset = k + j); operators as an array of rows of such pairs.

inline json to_json(const Complex &c) {
    return json::array({c.real(), c.imag()});
}

inline json to_json(const State &s) {
    json out = json::array();
    for (int o = 0; o < s.dim().n(); ++o) {
        out.push_back(to_json(s.amp(o)));
    }
    return out;
}

inline json to_json(const Op &op) {
    json out = json::array();
    for (int r = 0; r < op.dim().n(); ++r) {
        json row = json::array();
        for (int c = 0; c < op.dim().n(); ++c) {
            row.push_back(to_json(op.mat()(r, c)));
        }
        out.push_back(row);
    }
    return out;
}

inline Complex complex_from_json(const json &item) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_number() || !item[1].is_number()) {
        throw std::invalid_argument("state JSON: each entry must be a [re, im] number pair");
    }
    return Complex(item[0].get<double>(), item[1].get<double>());
}

// Reads an amplitude vector; callers decide whether to wrap it as a
// normalized State or a raw coefficient vector.
inline Vec vec_from_json(const json &arr) {
    if (!arr.is_array() || arr.empty()) {
        throw std::invalid_argument("state JSON: expected a non-empty array of [re, im] pairs");
    }
    Vec v(static_cast<int>(arr.size()));
    for (int i = 0; i < static_cast<int>(arr.size()); ++i) {
        v(i) = complex_from_json(arr[i]);
    }
    return v;
}

inline json to_json(const UnbiasednessReport &r) {
    json grid = json::array();
    for (int i = 0; i < r.grid.rows(); ++i) {
        for (int k = 0; k < r.grid.cols(); ++k) {
            grid.push_back(r.grid(i, k));
        }
    }
    return json{
        {"dim", r.dim.n()},
        {"grid_row_major", std::move(grid)},
        {"max_deviation", r.max_deviation},
        {"min_deviation", r.min_deviation},
    };
}

inline json to_json(const PhaseIdentityReport &r) {
    return json{
        {"dim", r.dim.n()},
        {"b", r.b},
        {"phase", to_json(r.phase)},
        {"residual", r.residual},
    };
}

inline json to_json(const Reconstruction &r) {
    return json{
        {"compatible", r.compatible},
        {"phase_unobservable", r.phase_unobservable},
        {"alpha_solutions", r.alpha_solutions},
        {"residual", r.residual},
    };
}

} // namespace ringqm
