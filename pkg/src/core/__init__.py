"""核心业务层入口。"""
