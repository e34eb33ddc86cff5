#include "nsrand/spectral_field.hpp"

#include "nsrand/error.hpp"

namespace nsrand {

SpectralField::SpectralField(Grid grid, std::size_t components, Space space)
    : grid_(std::move(grid)), components_(components), space_(space) {
  if (components_ == 0) throw InvalidArgument("a field needs at least one component");
  values_.assign(components_ * grid_.size(), Complex{});
}

std::span<Complex> SpectralField::component(std::size_t c) {
  if (c >= components_) throw InvalidArgument("component index out of range");
  return std::span<Complex>(values_).subspan(c * grid_.size(), grid_.size());
}

std::span<const Complex> SpectralField::component(std::size_t c) const {
  if (c >= components_) throw InvalidArgument("component index out of range");
  return std::span<const Complex>(values_).subspan(c * grid_.size(), grid_.size());
}

bool SpectralField::same_layout(const SpectralField& other) const noexcept {
  return grid_ == other.grid_ && components_ == other.components_ && space_ == other.space_;
}

void SpectralField::set_zero() { std::fill(values_.begin(), values_.end(), Complex{}); }

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  if (!same_layout(other)) throw InvalidArgument("field layouts differ");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  if (!same_layout(other)) throw InvalidArgument("field layouts differ");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double factor) {
  for (auto& v : values_) v *= factor;
  return *this;
}

SpectralField& SpectralField::operator*=(Complex factor) {
  for (auto& v : values_) v *= factor;
  return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double factor, SpectralField a) { return a *= factor; }

void require_space(const SpectralField& field, Space expected, const char* what) {
  if (field.space() != expected) {
    throw InvalidArgument(std::string(what) + ": field must be in " +
                          (expected == Space::fourier ? "fourier" : "physical") + " space");
  }
}

}  // namespace nsrand
