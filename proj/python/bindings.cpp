#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "owcsa/channel.hpp"
#include "owcsa/config.hpp"
#include "owcsa/errors.hpp"
#include "owcsa/montecarlo.hpp"
#include "owcsa/reliability.hpp"
#include "owcsa/sinr.hpp"
#include "owcsa/version.hpp"

namespace py = pybind11;
using namespace owcsa;

namespace {

py::array_t<double> as_array(const std::vector<double>& v)
{
    return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

SystemModel make_model(double semi_angle, double fov, double area, double responsivity, double ts, double zeta,
                       double pt, double eta, double n0, double bandwidth, double height, double radius)
{
    LedTransmitter led{semi_angle};
    PhotoDetector pd;
    pd.area = area;
    pd.responsivity = responsivity;
    pd.filter_gain = ts;
    pd.lens_refractive_index = zeta;
    pd.field_of_view = fov;
    CellGeometry cell{radius, height};
    PowerNoiseParams power{pt, eta, n0, bandwidth};
    return SystemModel(led, pd, cell, power);
}

// Applies f(obj, x) elementwise; scalars in, scalar out.
template <class T, class F>
auto elementwise(F f)
{
    return [f](const T& obj, py::array_t<double, py::array::forcecast> x) -> py::object {
        if (x.ndim() == 0)
            return py::float_(f(obj, *x.data()));
        py::array_t<double> out(std::vector<py::ssize_t>(x.shape(), x.shape() + x.ndim()));
        const double* in = x.data();
        double* o = out.mutable_data();
        for (py::ssize_t i = 0; i < x.size(); ++i)
            o[i] = f(obj, in[i]);
        return std::move(out);
    };
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.attr("__version__") = kVersion;

    static py::exception<DomainError> domain_error(m, "DomainError", PyExc_ValueError);
    static py::exception<ConfigError> config_error(m, "ConfigError", PyExc_ValueError);
    static py::exception<NumericalError> numerical_error(m, "NumericalError", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const NumericalError& e) {
            py::object err = py::handle(numerical_error)(e.what());
            err.attr("estimate") = e.estimate();
            PyErr_SetObject(numerical_error.ptr(), err.ptr());
        } catch (const DomainError& e) {
            py::set_error(domain_error, e.what());
        } catch (const ConfigError& e) {
            py::set_error(config_error, e.what());
        }
    });

    const SystemModel ref = SystemModel::reference();
    py::class_<SystemModel>(m, "SystemModel")
        .def(py::init(&make_model), py::kw_only(), py::arg("semi_angle") = ref.led().semi_angle_half_power,
             py::arg("fov") = ref.pd().field_of_view, py::arg("area") = ref.pd().area,
             py::arg("responsivity") = ref.pd().responsivity, py::arg("ts") = ref.pd().filter_gain,
             py::arg("zeta") = ref.pd().lens_refractive_index, py::arg("pt") = ref.power().tx_optical_power,
             py::arg("eta") = ref.power().oe_conversion, py::arg("n0") = ref.power().noise_psd,
             py::arg("bandwidth") = ref.power().bandwidth, py::arg("height") = ref.cell().height,
             py::arg("radius") = ref.cell().radius)
        .def_static("reference", &SystemModel::reference)
        .def("with_radius", &SystemModel::with_radius)
        .def("with_height", &SystemModel::with_height)
        .def("with_semi_angle", &SystemModel::with_semi_angle)
        .def("with_tx_power", &SystemModel::with_tx_power)
        .def("with_noise_psd", &SystemModel::with_noise_psd)
        .def_property_readonly("lambertian_order", &SystemModel::lambertian_order)
        .def_property_readonly("aggregate_factor", &SystemModel::aggregate_factor)
        .def_property_readonly("gain_min", &SystemModel::gain_min)
        .def_property_readonly("gain_max", &SystemModel::gain_max)
        .def_property_readonly("snr_min", &SystemModel::snr_min)
        .def_property_readonly("snr_max", &SystemModel::snr_max)
        .def_property_readonly("snr_scale", &SystemModel::snr_scale)
        .def_property_readonly("pdf_coefficient", &SystemModel::pdf_coefficient)
        .def_property_readonly("pdf_exponent", &SystemModel::pdf_exponent)
        .def_property_readonly("radius", [](const SystemModel& s) { return s.cell().radius; })
        .def_property_readonly("height", [](const SystemModel& s) { return s.cell().height; })
        .def_property_readonly("semi_angle", [](const SystemModel& s) { return s.led().semi_angle_half_power; })
        .def("fov_covers_cell", &SystemModel::fov_covers_cell);

    m.def("lambertian_order", &lambertian_order, py::arg("semi_angle"));
    m.def("channel_gain", elementwise<SystemModel>(&channel_gain), py::arg("model"), py::arg("r"));
    m.def("snr_pdf", elementwise<SystemModel>(&snr_pdf), py::arg("model"), py::arg("snr"));
    m.def("snr_cdf", elementwise<SystemModel>(&snr_cdf_closed_form), py::arg("model"), py::arg("snr"));

    py::enum_<InterferencePath>(m, "InterferencePath")
        .value("automatic", InterferencePath::automatic)
        .value("inversion", InterferencePath::inversion)
        .value("convolution", InterferencePath::convolution);

    py::class_<QuadratureSpec>(m, "QuadratureSpec")
        .def(py::init<>())
        .def_readwrite("cf_nodes", &QuadratureSpec::cf_nodes)
        .def_readwrite("inversion_t_max", &QuadratureSpec::inversion_t_max)
        .def_readwrite("inversion_nodes", &QuadratureSpec::inversion_nodes)
        .def_readwrite("lambda_nodes", &QuadratureSpec::lambda_nodes)
        .def_readwrite("rel_tol", &QuadratureSpec::rel_tol)
        .def_readwrite("grid_points", &QuadratureSpec::grid_points)
        .def_readwrite("interference_path", &QuadratureSpec::interference_path)
        .def("validate", &QuadratureSpec::validate);

    py::class_<TabulatedDistribution>(m, "TabulatedDistribution")
        .def_readonly("support_lo", &TabulatedDistribution::support_lo)
        .def_readonly("support_hi", &TabulatedDistribution::support_hi)
        .def_property_readonly("grid", [](const TabulatedDistribution& d) { return as_array(d.grid); })
        .def_property_readonly("pdf_values", [](const TabulatedDistribution& d) { return as_array(d.pdf_values); })
        .def_property_readonly("cdf_values", [](const TabulatedDistribution& d) { return as_array(d.cdf_values); })
        .def("pdf", elementwise<TabulatedDistribution>(
                        [](const TabulatedDistribution& d, double x) { return d.pdf(x); }))
        .def("cdf", elementwise<TabulatedDistribution>(
                        [](const TabulatedDistribution& d, double x) { return d.cdf(x); }))
        .def("mass", &TabulatedDistribution::mass)
        .def("mean", &TabulatedDistribution::mean)
        .def("peak", &TabulatedDistribution::peak);

    const auto nogil = py::call_guard<py::gil_scoped_release>();
    const QuadratureSpec default_spec;

    m.def(
        "single_interferer_cf",
        [](const SystemModel& model, const std::vector<double>& t, const QuadratureSpec& spec) {
            const CharacteristicFunction cf(model, spec);
            std::vector<Complex> out;
            out.reserve(t.size());
            for (double x : t)
                out.push_back(cf(x));
            return out;
        },
        py::arg("model"), py::arg("t"), py::arg("spec") = default_spec, nogil);
    m.def(
        "interference_pdf",
        [](const SystemModel& model, int n, const QuadratureSpec& spec) {
            InterferenceModel im(model, spec);
            return *im.density(n);
        },
        py::arg("model"), py::arg("n_interferers"), py::arg("spec") = default_spec, nogil);

    py::class_<InterferenceModel>(m, "InterferenceModel")
        .def(py::init<const SystemModel&, const QuadratureSpec&>(), py::arg("model"),
             py::arg("spec") = default_spec)
        .def_property_readonly("model", &InterferenceModel::model)
        .def_property_readonly("spec", &InterferenceModel::spec)
        .def(
            "density", [](InterferenceModel& im, int n) { return *im.density(n); }, py::arg("n_interferers"),
            nogil)
        .def("path_used", &InterferenceModel::path_used, py::arg("n_interferers"));

    m.def("conditional_sinr_pdf", py::overload_cast<InterferenceModel&, int>(&conditional_sinr_pdf),
          py::arg("interference"), py::arg("n_active"), nogil);
    m.def("conditional_sinr_cdf", py::overload_cast<InterferenceModel&, int, double>(&conditional_sinr_cdf),
          py::arg("interference"), py::arg("n_active"), py::arg("threshold"), nogil);
    m.def("sinr_floor", &sinr_floor, py::arg("model"), py::arg("n_active"));
    m.def("sinr_ceiling", &sinr_ceiling, py::arg("model"), py::arg("n_active"));

    py::enum_<ReceiverMode>(m, "ReceiverMode")
        .value("capture", ReceiverMode::capture)
        .value("classical", ReceiverMode::classical);
    py::enum_<Mixture>(m, "Mixture").value("paper", Mixture::paper).value("conditional", Mixture::conditional);

    py::class_<TrafficModel>(m, "TrafficModel")
        .def(py::init([](int users, double pa) {
                 TrafficModel t{users, pa};
                 t.validate();
                 return t;
             }),
             py::arg("users") = TrafficModel{}.population, py::arg("activation_prob") = TrafficModel{}.activation_prob)
        .def_readwrite("population", &TrafficModel::population)
        .def_readwrite("activation_prob", &TrafficModel::activation_prob);

    py::class_<OutageQuery>(m, "OutageQuery")
        .def(py::init([](double threshold, ReceiverMode mode, Mixture mixture) {
                 OutageQuery q{threshold, mode, mixture};
                 q.validate();
                 return q;
             }),
             py::arg("threshold") = kDefaultThreshold, py::arg("mode") = ReceiverMode::capture,
             py::arg("mixture") = Mixture::paper)
        .def_readwrite("threshold", &OutageQuery::threshold)
        .def_readwrite("mode", &OutageQuery::mode)
        .def_readwrite("mixture", &OutageQuery::mixture);
    m.attr("DEFAULT_THRESHOLD") = kDefaultThreshold;

    m.def("binomial_pmf", &binomial_pmf, py::arg("traffic"), py::arg("n"));
    m.def("conditional_outage",
          py::overload_cast<InterferenceModel&, int, const OutageQuery&>(&conditional_outage),
          py::arg("interference"), py::arg("n_active"), py::arg("query") = OutageQuery{}, nogil);
    m.def("unconditional_outage",
          py::overload_cast<InterferenceModel&, const TrafficModel&, const OutageQuery&>(&unconditional_outage),
          py::arg("interference"), py::arg("traffic"), py::arg("query") = OutageQuery{}, nogil);

    py::class_<McConfig>(m, "McConfig")
        .def(py::init([](std::int64_t trials, std::uint64_t seed, std::uint64_t stream_id, int threads) {
                 McConfig c{trials, seed, stream_id, threads};
                 c.validate();
                 return c;
             }),
             py::arg("trials") = McConfig{}.trials, py::arg("seed") = McConfig{}.seed, py::arg("stream_id") = 0,
             py::arg("threads") = 0)
        .def_readwrite("trials", &McConfig::trials)
        .def_readwrite("seed", &McConfig::seed)
        .def_readwrite("stream_id", &McConfig::stream_id)
        .def_readwrite("threads", &McConfig::threads);

    py::class_<McEstimate>(m, "McEstimate")
        .def_readonly("value", &McEstimate::value)
        .def_readonly("half_width_95", &McEstimate::half_width_95)
        .def_readonly("trials", &McEstimate::trials)
        .def_readonly("degenerate", &McEstimate::degenerate)
        .def("__repr__", [](const McEstimate& e) {
            return "McEstimate(value=" + std::to_string(e.value) + ", half_width_95=" +
                   std::to_string(e.half_width_95) + ", trials=" + std::to_string(e.trials) + ")";
        });

    m.def("simulate_conditional_outage", &simulate_conditional_outage, py::arg("model"), py::arg("n_active"),
          py::arg("threshold"), py::arg("mc") = McConfig{}, nogil);
    m.def("simulate_unconditional_outage", &simulate_unconditional_outage, py::arg("model"), py::arg("traffic"),
          py::arg("threshold"), py::arg("mode") = ReceiverMode::capture, py::arg("mc") = McConfig{},
          py::arg("mixture") = Mixture::paper, nogil);
    m.def(
        "sample_conditional_sinr",
        [](const SystemModel& model, int n_active, const McConfig& mc) {
            std::vector<double> v;
            {
                py::gil_scoped_release release;
                v = sample_conditional_sinr(model, n_active, mc);
            }
            return as_array(v);
        },
        py::arg("model"), py::arg("n_active"), py::arg("mc") = McConfig{});

    py::enum_<SweepAxis>(m, "SweepAxis")
        .value("users", SweepAxis::users)
        .value("semi_angle", SweepAxis::semi_angle)
        .value("radius", SweepAxis::radius)
        .value("activation_prob", SweepAxis::activation_prob);

    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("param", &SweepRow::param)
        .def_readonly("p_out_capture", &SweepRow::p_out_capture)
        .def_readonly("p_out_classical", &SweepRow::p_out_classical)
        .def_readonly("mc", &SweepRow::mc)
        .def_readonly("error", &SweepRow::error);

    m.def(
        "sweep",
        [](const SystemModel& model, const TrafficModel& traffic, const OutageQuery& query, SweepAxis axis,
           const std::vector<double>& values, const QuadratureSpec& spec, std::optional<McConfig> mc) {
            py::gil_scoped_release release;
            return sweep(model, traffic, query, axis, values, spec, mc ? &*mc : nullptr).rows;
        },
        py::arg("model"), py::arg("traffic"), py::arg("query"), py::arg("axis"), py::arg("values"),
        py::arg("spec") = default_spec, py::arg("mc") = std::nullopt);

    py::class_<RunConfig>(m, "RunConfig")
        .def_readwrite("traffic", &RunConfig::traffic)
        .def_readwrite("query", &RunConfig::query)
        .def_readwrite("quadrature", &RunConfig::quadrature)
        .def_readwrite("mc", &RunConfig::mc)
        .def_readwrite("n_active", &RunConfig::n_active)
        .def("model", &RunConfig::model)
        .def("resolved", &RunConfig::resolved)
        .def("set", &apply_setting, py::arg("key"), py::arg("value"));

    m.def("parse_config", &parse_config, py::arg("text"), py::arg("source") = "<config>");
    m.def("load_config", &load_config, py::arg("path"));
}
