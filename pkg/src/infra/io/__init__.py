"""数据集、模型文件、报告与绘图的读写。"""

from .dataset_file import DatasetFormat, load_dataset, load_network_dataset
from .model_file import SCHEMA_VERSION, dumps_model, load_model, save_model
from .report_csv import perceptron_trace_csv, train_report_csv, write_text
from .svg_plot import PlotPoint, render_sector_plot

__all__ = [
    "DatasetFormat",
    "PlotPoint",
    "SCHEMA_VERSION",
    "dumps_model",
    "load_dataset",
    "load_model",
    "load_network_dataset",
    "perceptron_trace_csv",
    "render_sector_plot",
    "save_model",
    "train_report_csv",
    "write_text",
]
