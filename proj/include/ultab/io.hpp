#pragma once

#include <string>

#include "ultab/model.hpp"
#include "ultab/poset.hpp"

namespace ultab {

// Poset file: {"worlds":[...], "covers":[[a,b],...], "root": "name"?} with
// covers as immediate-cover name pairs a < b; the order is their closure.
// Model file adds {"vars":[...], "colors":{"world":"bitstring"}} where
// bitstring position i corresponds to vars[i].
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string poset_to_json(const Poset& p, int indent = 2);
Poset poset_from_json(const std::string& text);

std::string model_to_json(const Model& m, int indent = 2);
Model model_from_json(const std::string& text);

// detects a model (presence of "vars") vs a bare poset
bool json_is_model(const std::string& text);

// Hasse diagram: cover edges only, ranked by depth, color labels on nodes
// when a model is given.
std::string poset_to_dot(const Poset& p);
std::string model_to_dot(const Model& m);

}  // namespace ultab
