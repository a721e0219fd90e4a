#pragma once

#include <string>

#include "lsfrp/instance.hpp"

namespace lsfrp::testing {

// One ship, three visits, one demand m1 = (v1, {v2}); optimum 676 on v0 v1 v2.
Instance t1();

// u_dc = 50 carrying 40 of A past origin B where 30 of B wait.
Instance overload1();

// u_rf = 5 with two reefer demands of 4 loaded at consecutive visits.
Instance reefer_pair();

// Origin A -> dA1 -> origin B -> dA2 -> dB with a bypass oA -> oB.
Instance figure3();

// Two ship types; cargo can only change ships inside the reduced model's relaxation.
Instance lp_gap();

// Three ships of three types, an odd cycle of shared visits; fractional master.
Instance odd_cycle();

// Two identical ships whose only real routes share one visit.
Instance shared_corridor();

// Empty equipment surplus at v1 and deficit at v2 on a single ship line.
Instance empty_line();

std::string fixture_path(const std::string& file);

}  // namespace lsfrp::testing
