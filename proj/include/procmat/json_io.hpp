// Copyright 2026 The procmat developers
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

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "procmat/game.hpp"
#include "procmat/operator.hpp"

namespace procmat {

using Json = nlohmann::json;

// Operator interchange format: labels, dims, and the real/imaginary parts as
// row-major 2-D arrays. Numbers are serialized losslessly, so parse/emit
// round-trips are byte-identical.
inline Json operator_to_json(const Operator& op) {
  Json j;
  j["labels"] = op.layout().labels();
  j["dims"] = op.layout().dims();
  const Eigen::Index d = op.dim();
  Json re = Json::array(), im = Json::array();
  for (Eigen::Index i = 0; i < d; ++i) {
    Json re_row = Json::array(), im_row = Json::array();
    for (Eigen::Index k = 0; k < d; ++k) {
      re_row.push_back(op.matrix()(i, k).real());
      im_row.push_back(op.matrix()(i, k).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  return j;
}

inline Operator operator_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("labels") || !j.contains("dims") ||
      !j.contains("re") || !j.contains("im"))
    throw std::invalid_argument(
        "operator json: expected object with labels, dims, re, im");
  SubsystemLayout layout(j.at("labels").get<std::vector<std::string>>(),
                         j.at("dims").get<std::vector<int>>());
  const Eigen::Index d = layout.total_dim();
  const Json& re = j.at("re");
  const Json& im = j.at("im");
  if (!re.is_array() || !im.is_array() ||
      re.size() != static_cast<std::size_t>(d) ||
      im.size() != static_cast<std::size_t>(d))
    throw std::invalid_argument("operator json: re/im shape mismatch");
  Matrix m(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const Json& re_row = re.at(static_cast<std::size_t>(i));
    const Json& im_row = im.at(static_cast<std::size_t>(i));
    if (re_row.size() != static_cast<std::size_t>(d) ||
        im_row.size() != static_cast<std::size_t>(d))
      throw std::invalid_argument("operator json: re/im shape mismatch");
    for (Eigen::Index k = 0; k < d; ++k)
      m(i, k) = Complex(re_row.at(static_cast<std::size_t>(k)).get<double>(),
                        im_row.at(static_cast<std::size_t>(k)).get<double>());
  }
  return Operator(std::move(layout), std::move(m));
}

// Instrument format: Operator JSON entries indexed by outcome.
inline Json instrument_to_json(const Instrument& ins) {
  Json j;
  j["d_in"] = ins.d_in;
  j["d_out"] = ins.d_out;
  Json ops = Json::array();
  for (const Operator& op : ins.choi) ops.push_back(operator_to_json(op));
  j["choi_ops"] = std::move(ops);
  return j;
}

inline Instrument instrument_from_json(const Json& j) {
  Instrument ins;
  ins.d_in = j.at("d_in").get<int>();
  ins.d_out = j.at("d_out").get<int>();
  const Json& ops = j.at("choi_ops");
  if (!ops.is_array() || ops.empty())
    throw std::invalid_argument("instrument json: choi_ops must be nonempty");
  const SubsystemLayout expected = choi_layout(ins.d_in, ins.d_out);
  for (const Json& oj : ops) {
    Operator op = operator_from_json(oj);
    if (op.layout() != expected)
      throw std::invalid_argument(
          "instrument json: choi operator layout mismatch");
    ins.choi.push_back(std::move(op));
  }
  return ins;
}

inline Json strategy_to_json(const Strategy& strategy) {
  Json j;
  Json alice = Json::array(), bob = Json::array();
  for (const Instrument& ins : strategy.alice)
    alice.push_back(instrument_to_json(ins));
  for (const Instrument& ins : strategy.bob)
    bob.push_back(instrument_to_json(ins));
  j["alice"] = std::move(alice);
  j["bob"] = std::move(bob);
  return j;
}

inline Strategy strategy_from_json(const Json& j) {
  Strategy strategy;
  for (const Json& ij : j.at("alice"))
    strategy.alice.push_back(instrument_from_json(ij));
  for (const Json& ij : j.at("bob"))
    strategy.bob.push_back(instrument_from_json(ij));
  if (strategy.alice.empty() || strategy.bob.empty())
    throw std::invalid_argument("strategy json: both parties need settings");
  return strategy;
}

inline Json game_to_json(const GameSpec& game) {
  Json j;
  j["setting_probs"] = game.setting_probs;
  j["win"] = game.win;
  return j;
}

inline GameSpec game_from_json(const Json& j) {
  GameSpec game;
  game.setting_probs =
      j.at("setting_probs").get<std::vector<std::vector<double>>>();
  game.win =
      j.at("win")
          .get<std::vector<std::vector<std::vector<std::vector<int>>>>>();
  if (game.setting_probs.empty() || game.win.empty())
    throw std::invalid_argument("game json: empty setting table");
  return game;
}

}  // namespace procmat
