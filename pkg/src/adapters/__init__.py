"""适配层入口。"""
