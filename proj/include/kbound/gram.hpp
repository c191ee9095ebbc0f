#pragma once

#include "kbound/matrix.hpp"

namespace kbound {

// Symmetric positive semidefinite integer matrix.  The check runs on
// construction so downstream code can rely on it.
struct GramMatrix {
    IMat m;

    GramMatrix() = default;
    explicit GramMatrix(IMat mat, bool check = true) : m(std::move(mat)) {
        if (check) {
            if (!m.is_symmetric()) throw std::domain_error("GramMatrix: not symmetric");
            if (!is_psd(m)) throw std::domain_error("GramMatrix: not positive semidefinite");
        }
    }

    int size() const { return m.rows(); }
    bool operator==(const GramMatrix& o) const { return m == o.m; }
};

} // namespace kbound
