// Copyright 2026 The twsat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TWSAT_TEXT_FORMAT_H
#define TWSAT_TEXT_FORMAT_H

#include <string>
#include <string_view>

#include "twsat/graph.h"
#include "twsat/network.h"

namespace twsat {

// Line-oriented exchange formats. Blank lines and lines starting with '#' are ignored.
//
//   d-graph v1 <n> <m>          then m lines "<u> <v> <label>"
//   d-network v1 <m>            then m lines "<k> <i1> ... <ik>"
//   d-ctree v1 <count> <root>   then one line per node id in ascending order:
//                                 "<id> leaf <position> : <indices...>"
//                                 "<id> node <left> <right> : <indices...>"
//   d-carving v1 <count> <root> then "<id> leaf <vertex> cut <c>" / "<id> node <l> <r> cut <c>"

std::string format_graph(const Multigraph &g);
Multigraph parse_graph(std::string_view text);

std::string format_network(const AbstractNetwork &net);
AbstractNetwork parse_network(std::string_view text);

std::string format_contraction_tree(const ContractionTree &tree);
ContractionTree parse_contraction_tree(std::string_view text);

std::string format_carving(const RootedCarving &carving);

std::string format_tree_decomposition(const TreeDecomposition &td);

/// First non-comment token of the text ("d-graph", "d-network", "{" ...).
std::string sniff_format(std::string_view text);

}  // namespace twsat

#endif
