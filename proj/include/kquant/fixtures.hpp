#pragma once

#include <map>
#include <string>

namespace kquant::fixtures {

inline const std::map<std::string, std::string>& algebras() {
    static const std::map<std::string, std::string> m = {
        {"sl2",
         "algebra sl2\n"
         "dim 3\n"
         "basis e h f\n"
         "bracket h e -> 2 e\n"
         "bracket h f -> -2 f\n"
         "bracket e f -> 1 h\n"},
        {"heis3",
         "algebra heis3\n"
         "dim 3\n"
         "basis x y z\n"
         "bracket x y -> 1 z\n"},
        {"abelian3",
         "algebra abelian3\n"
         "dim 3\n"
         "basis a b c\n"},
        {"solv2",
         "algebra solv2\n"
         "dim 2\n"
         "basis x y\n"
         "bracket x y -> 1 y\n"},
    };
    return m;
}

}  // namespace kquant::fixtures
