#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "intermithash/bench.hpp"
#include "intermithash/energy.hpp"
#include "intermithash/quality.hpp"
#include "intermithash/registry.hpp"
#include "intermithash/speck.hpp"

namespace py = pybind11;
using namespace intermithash;

namespace {

ByteView view_of(const py::bytes& b, std::string& keep) {
  keep = b;
  return as_bytes(keep);
}

py::bytes to_py(ByteView v) { return {reinterpret_cast<const char*>(v.data()), v.size()}; }

class PyHasher {
 public:
  explicit PyHasher(const std::string& name) : algo_(find_hash(name)), state_(algo_->stream()) {}

  void update(const py::bytes& data) {
    if (done_) throw std::runtime_error("hasher already finished");
    std::string keep;
    const auto v = view_of(data, keep);
    py::gil_scoped_release unlock;
    state_->update(v);
  }

  py::bytes finish() {
    if (done_) throw std::runtime_error("hasher already finished");
    done_ = true;
    return to_py(state_->finish().view());
  }

  py::dict counters() const {
    const auto c = state_->counters();
    py::dict d;
    d["compressions"] = c.compressions;
    d["cipher_calls"] = c.cipher_calls;
    return d;
  }

  std::string name() const { return algo_->name(); }
  std::size_t digest_size() const { return algo_->digest_bytes(); }

 private:
  std::shared_ptr<const HashAlgorithm> algo_;
  std::unique_ptr<StreamingHasher> state_;
  bool done_ = false;
};

std::uint64_t collisions(const std::string& name, const KeysetSpec& spec) {
  const auto h = find_hash(name);
  py::gil_scoped_release unlock;
  return count_collisions(*h, spec);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "intermithash native core";

  py::register_exception<CapacityError>(m, "CapacityError", PyExc_MemoryError);

  m.def("hash_names", &hash_names);

  m.def(
      "digest",
      [](const std::string& name, const py::bytes& data) {
        const auto h = find_hash(name);
        std::string keep;
        const auto v = view_of(data, keep);
        Digest d;
        {
          py::gil_scoped_release unlock;
          d = h->hash(v);
        }
        return to_py(d.view());
      },
      py::arg("name"), py::arg("data"));

  py::class_<PyHasher>(m, "Hasher")
      .def(py::init<const std::string&>(), py::arg("name"))
      .def("update", &PyHasher::update, py::arg("data"))
      .def("finish", &PyHasher::finish)
      .def("counters", &PyHasher::counters)
      .def_property_readonly("name", &PyHasher::name)
      .def_property_readonly("digest_size", &PyHasher::digest_size);

  m.def(
      "speck_encrypt",
      [](int block_bits, const py::bytes& key, const py::bytes& block) {
        const SpeckVariant* v = block_bits == 64 ? &kSpeck64_128 : block_bits == 128 ? &kSpeck128_128 : nullptr;
        if (!v) throw std::invalid_argument("block_bits must be 64 or 128");
        std::string k, b;
        return to_py(speck_encrypt(*v, view_of(key, k), view_of(block, b)).view());
      },
      py::arg("block_bits"), py::arg("key"), py::arg("block"));

  m.def(
      "zeros_collisions", [](const std::string& name, std::size_t max_len) {
        return collisions(name, KeysetSpec{ZerosKeys{max_len}});
      },
      py::arg("name"), py::arg("max_len") = 65536);
  m.def(
      "twobytes_collisions", [](const std::string& name, std::size_t max_len) {
        return collisions(name, KeysetSpec{TwoBytesKeys{max_len}});
      },
      py::arg("name"), py::arg("max_len") = 4);

  m.def(
      "avalanche_bias",
      [](const std::string& name, std::size_t msg_bytes, std::uint64_t samples, std::uint64_t seed) {
        const auto h = find_hash(name);
        py::gil_scoped_release unlock;
        return avalanche_bias(*h, msg_bytes, samples, seed);
      },
      py::arg("name"), py::arg("msg_bytes") = 32, py::arg("samples") = 100000, py::arg("seed") = 0);

  m.def(
      "differential_test",
      [](const std::string& name, std::size_t key_bytes, std::size_t n_bits, std::uint64_t pairs,
         std::uint64_t seed) {
        const auto h = find_hash(name);
        DifferentialResult r;
        {
          py::gil_scoped_release unlock;
          r = differential_test(*h, key_bytes, n_bits, pairs, seed);
        }
        py::dict d;
        d["n_bits"] = r.n_bits;
        d["pairs"] = r.pairs;
        d["collisions"] = r.collisions;
        return d;
      },
      py::arg("name"), py::arg("key_bytes") = 8, py::arg("n_bits") = 1, py::arg("pairs") = 1000,
      py::arg("seed") = 0);

  m.def(
      "collision_probability", [](double k, double n) { return collision_probability({k, n}); },
      py::arg("k"), py::arg("n"));

  m.def(
      "bench",
      [](const std::string& name, const std::string& msg_class, unsigned reps, std::uint64_t seed) {
        BenchOptions opt;
        opt.repetitions = reps;
        opt.seed = seed;
        const auto cls = parse_msg_class(msg_class);
        BenchResult r;
        {
          py::gil_scoped_release unlock;
          r = bench_hash(name, cls, opt);
        }
        py::dict d;
        d["hash"] = r.hash_name;
        d["class"] = to_string(r.msg_class);
        d["ns_per_byte"] = r.ns_per_byte;
        d["compressions"] = r.compressions;
        d["cipher_calls"] = r.cipher_calls;
        d["state_bytes"] = r.state_bytes;
        return d;
      },
      py::arg("name"), py::arg("msg_class") = "long", py::arg("reps") = 30, py::arg("seed") = 0);

  py::class_<EnergyParams>(m, "EnergyParams")
      .def(py::init<>())
      .def_readwrite("capacitance_f", &EnergyParams::capacitance_f)
      .def_readwrite("v_on", &EnergyParams::v_on)
      .def_readwrite("v_off", &EnergyParams::v_off)
      .def_readwrite("v_max", &EnergyParams::v_max)
      .def_readwrite("p_load_w", &EnergyParams::p_load_w)
      .def_readwrite("p_sleep_w", &EnergyParams::p_sleep_w)
      .def_readwrite("p_leak_w", &EnergyParams::p_leak_w)
      .def_readwrite("f_cpu_hz", &EnergyParams::f_cpu_hz)
      .def("validate", &EnergyParams::validate)
      .def("energy_at", &EnergyParams::energy_at, py::arg("v"))
      .def("voltage_at", &EnergyParams::voltage_at, py::arg("energy_j"))
      .def("__str__", &format_params);

  m.def("parse_params", &parse_params, py::arg("text"));
  m.def("load_params", &load_params, py::arg("path"));
  m.def("energy_per_ipc", &energy_per_ipc, py::arg("params"));
  m.def("cycles_per_ipc", &cycles_per_ipc, py::arg("params"));

  m.def(
      "run_sweep",
      [](const EnergyParams& params, std::uint64_t trials, std::uint64_t seed,
         std::optional<std::vector<double>> distances, const std::string& policy) {
        SweepConfig cfg;
        if (distances) cfg.distances_m = *distances;
        std::vector<ExecutionPolicy> policies;
        if (policy == "continuous" || policy == "both") policies.emplace_back(ContinuousPolicy{});
        if (policy == "iem" || policy == "both") policies.emplace_back(cfg.iem);
        if (policies.empty()) throw std::invalid_argument("policy must be continuous, iem or both");
        std::vector<SweepPoint> pts;
        {
          py::gil_scoped_release unlock;
          pts = run_sweep(params, cfg, policies, trials, seed);
        }
        py::list out;
        for (const auto& p : pts) {
          py::dict d;
          d["distance_m"] = p.distance_m;
          d["power_w"] = p.power_w;
          d["policy"] = p.policy;
          d["trials"] = p.trials;
          d["success_rate"] = p.success_rate;
          out.append(d);
        }
        return out;
      },
      py::arg("params"), py::arg("trials") = 200, py::arg("seed") = 0, py::arg("distances") = py::none(),
      py::arg("policy") = "both");
}
