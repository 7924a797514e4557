#pragma once

#include <stdexcept>

namespace thhk {

/// Target lies outside the image of the logarithm at the available precision.
class not_in_image_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A computation ran out of certified p-adic digits.
class precision_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A rank or normal-form question cannot be decided at the given
/// truncation and precision.
class indeterminate_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace thhk
