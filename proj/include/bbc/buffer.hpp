#ifndef BBC_BUFFER_HPP
#define BBC_BUFFER_HPP

#include <cstddef>
#include <cstdlib>
#include <new>
#include <vector>

#if defined(__linux__)
#include <sys/mman.h>
#endif

namespace bbc {

namespace detail {

inline constexpr std::size_t kHugePage = std::size_t{1} << 21;

/**
 * Allocator for large per-vertex arrays. Blocks of at least 2 MiB are aligned to
 * 2 MiB and, on Linux, advised for transparent huge pages; smaller blocks go
 * through operator new.
 */
template <typename T>
struct LargePageAllocator {
  using value_type = T;

  LargePageAllocator() noexcept = default;
  template <typename U>
  LargePageAllocator(const LargePageAllocator<U>& /*unused*/) noexcept {}

  T* allocate(std::size_t count) {
    const std::size_t bytes = count * sizeof(T);
    if (bytes < kHugePage) return static_cast<T*>(::operator new(bytes));
    const std::size_t rounded = (bytes + kHugePage - 1) / kHugePage * kHugePage;
    void* p = std::aligned_alloc(kHugePage, rounded);
    if (p == nullptr) throw std::bad_alloc();
#if defined(__linux__) && defined(MADV_HUGEPAGE)
    ::madvise(p, rounded, MADV_HUGEPAGE);
#endif
    return static_cast<T*>(p);
  }

  void deallocate(T* p, std::size_t count) noexcept {
    if (count * sizeof(T) < kHugePage) {
      ::operator delete(p);
    } else {
      std::free(p);
    }
  }

  template <typename U>
  bool operator==(const LargePageAllocator<U>& /*unused*/) const noexcept {
    return true;
  }
};

}  // namespace detail

/// Vector for internal per-vertex scratch data.
template <typename T>
using Buffer = std::vector<T, detail::LargePageAllocator<T>>;

}  // namespace bbc

#endif  // BBC_BUFFER_HPP
