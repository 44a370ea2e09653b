#pragma once

#include <future>
#include <map>
#include <memory>
#include <mutex>

namespace qcong {

// Keyed memo table with compute-at-most-once semantics: concurrent callers
// for the same key block on a single computation.  A failed computation is
// retired so later callers may retry.
template <class K, class V>
class OnceCache {
 public:
  template <class F>
  std::shared_ptr<const V> get(const K& key, F&& compute) {
    std::shared_future<std::shared_ptr<const V>> fut;
    std::promise<std::shared_ptr<const V>> prom;
    bool owner = false;
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = map_.find(key);
      if (it == map_.end()) {
        owner = true;
        fut = prom.get_future().share();
        map_.emplace(key, fut);
      } else {
        fut = it->second;
      }
    }
    if (!owner) return fut.get();
    try {
      auto value = std::make_shared<const V>(compute());
      prom.set_value(value);
      return value;
    } catch (...) {
      {
        std::lock_guard<std::mutex> lock(mu_);
        map_.erase(key);
      }
      prom.set_exception(std::current_exception());
      throw;
    }
  }

 private:
  std::mutex mu_;
  std::map<K, std::shared_future<std::shared_ptr<const V>>> map_;
};

}  // namespace qcong
