#pragma once

#include "kquant/weights.hpp"

namespace kquant {

// Exact n <= 2 table, same content as data/weights.table.
inline const char* bundled_weight_text() {
    return
        "K0: exact 1 empty graph\n"
        "K1:(L,R) exact 1/2 solved mc samples=1000000 seed=20240601 mix1\n"
        "K1:(R,L) exact -1/2 solved mc samples=1000000 seed=20240601 mix1\n"
        "K2:(2,L);(1,L) exact 0 solved mc samples=1000000 seed=20240601 mix1\n"
        "K2:(2,L);(1,R) exact -1/24 solved mc samples=1000000 seed=20240601 mix1\n"
        "K2:(2,L);(L,1) exact 0 solved mc samples=1000000 seed=20240601 mix1\n"
        "K2:(2,L);(L,R) exact -1/12 solved mc samples=1000000 seed=20240601 mix1\n"
        "K2:(2,L);(R,1) exact 1/24 solved mc samples=1000000 seed=20240601 mix1\n"
        "K2:(2,L);(R,L) exact 1/12 solved mc samples=1000000 seed=20240601 mix1\n"
        "K2:(2,R);(1,L) exact -1/24 solved mc samples=1000000 seed=20240601 mix1\n"
        "K2:(2,R);(1,R) exact 0 solved mc samples=1000000 seed=20240601 mix1\n"
        "K2:(2,R);(L,1) exact 1/24 solved mc samples=1000000 seed=20240601 mix1\n"
        "K2:(2,R);(L,R) exact 1/12 solved mc samples=1000000 seed=20240601 mix1\n"
        "K2:(2,R);(R,1) exact 0 solved mc samples=1000000 seed=20240601 mix1\n"
        "K2:(2,R);(R,L) exact -1/12 solved mc samples=1000000 seed=20240601 mix1\n"
        "K2:(L,2);(1,L) exact 0 solved mc samples=1000000 seed=20240601 mix1\n"
        "K2:(L,2);(1,R) exact 1/24 solved mc samples=1000000 seed=20240601 mix1\n"
        "K2:(L,2);(L,1) exact 0 solved mc samples=1000000 seed=20240601 mix1\n"
        "K2:(L,2);(L,R) exact 1/12 solved mc samples=1000000 seed=20240601 mix1\n"
        "K2:(L,2);(R,1) exact -1/24 solved mc samples=1000000 seed=20240601 mix1\n"
        "K2:(L,2);(R,L) exact -1/12 solved mc samples=1000000 seed=20240601 mix1\n"
        "K2:(L,R);(1,L) exact -1/12 solved mc samples=1000000 seed=20240601 mix1\n"
        "K2:(L,R);(1,R) exact 1/12 solved mc samples=1000000 seed=20240601 mix1\n"
        "K2:(L,R);(L,1) exact 1/12 solved mc samples=1000000 seed=20240601 mix1\n"
        "K2:(L,R);(L,R) exact 1/4 solved mc samples=1000000 seed=20240601 mix1\n"
        "K2:(L,R);(R,1) exact -1/12 solved mc samples=1000000 seed=20240601 mix1\n"
        "K2:(L,R);(R,L) exact -1/4 solved mc samples=1000000 seed=20240601 mix1\n"
        "K2:(R,2);(1,L) exact 1/24 solved mc samples=1000000 seed=20240601 mix1\n"
        "K2:(R,2);(1,R) exact 0 solved mc samples=1000000 seed=20240601 mix1\n"
        "K2:(R,2);(L,1) exact -1/24 solved mc samples=1000000 seed=20240601 mix1\n"
        "K2:(R,2);(L,R) exact -1/12 solved mc samples=1000000 seed=20240601 mix1\n"
        "K2:(R,2);(R,1) exact 0 solved mc samples=1000000 seed=20240601 mix1\n"
        "K2:(R,2);(R,L) exact 1/12 solved mc samples=1000000 seed=20240601 mix1\n"
        "K2:(R,L);(1,L) exact 1/12 solved mc samples=1000000 seed=20240601 mix1\n"
        "K2:(R,L);(1,R) exact -1/12 solved mc samples=1000000 seed=20240601 mix1\n"
        "K2:(R,L);(L,1) exact -1/12 solved mc samples=1000000 seed=20240601 mix1\n"
        "K2:(R,L);(L,R) exact -1/4 solved mc samples=1000000 seed=20240601 mix1\n"
        "K2:(R,L);(R,1) exact 1/12 solved mc samples=1000000 seed=20240601 mix1\n"
        "K2:(R,L);(R,L) exact 1/4 solved mc samples=1000000 seed=20240601 mix1\n";
}

inline WeightTable bundled_weight_table() {
    WeightTable t = WeightCache::parse(bundled_weight_text()).table(2);
    return t;
}

}  // namespace kquant
