"""MVQN 工具包入口。"""
