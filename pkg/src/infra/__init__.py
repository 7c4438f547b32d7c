"""基础设施层入口。"""
