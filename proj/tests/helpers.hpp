#pragma once

#include "kbound/matrix.hpp"

#include <vector>

namespace kbound::testutil {

inline IMat mat(const std::vector<std::vector<long>>& rows) {
    IMat m(static_cast<int>(rows.size()),
           rows.empty() ? 0 : static_cast<int>(rows.front().size()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
    return m;
}

} // namespace kbound::testutil
