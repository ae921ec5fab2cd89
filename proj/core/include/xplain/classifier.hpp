#pragma once

#include <span>
#include <string_view>

namespace xplain {

/// Minimal prediction interface shared by the two model families, so the
/// evidence selection can ask any model for a label.
class Classifier {
public:
    virtual ~Classifier() = default;
    virtual int predict_label(std::span<const double> x) const = 0;
    virtual std::string_view kind() const = 0;
};

} // namespace xplain
