"""
任務管理器模組 - 按依賴順序排程檢查任務並追蹤進度
"""

import logging
from typing import Any, Dict, List, Optional

from .errors import MalformedInputError

logger = logging.getLogger(__name__)

PENDING = "pending"
COMPLETED = "completed"


class TaskManager:
    """
    任務管理器，負責記錄任務、解析依賴並給出下一個可執行的任務

    屬性:
        tasks (List[Dict[str, Any]]): 任務列表，保持加入順序
    """

    def __init__(self):
        """初始化空的任務管理器"""
        self.tasks: List[Dict[str, Any]] = []

    def add_task(self, task_id: str, description: str, metadata: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
        """
        添加任務

        參數:
            task_id (str): 任務ID
            description (str): 任務描述
            metadata (Optional[Dict[str, Any]]): 附加信息，"depends_on" 可為單個ID或ID列表，
                "assigned_to" 為負責的檢查名稱

        返回:
            Dict[str, Any]: 新任務

        異常:
            MalformedInputError: ID 重複或依賴未知任務
        """
        if self.get_task(task_id) is not None:
            raise MalformedInputError(f"Duplicate task id {task_id}")
        metadata = dict(metadata or {})
        for dependency in self.dependencies_of(metadata):
            if self.get_task(dependency) is None:
                raise MalformedInputError(f"Task {task_id} depends on unknown task {dependency}")

        task = {
            "id": task_id,
            "description": description,
            "metadata": metadata,
            "status": PENDING,
            "result": None,
        }
        self.tasks.append(task)
        return task

    @staticmethod
    def dependencies_of(metadata: Dict[str, Any]) -> List[str]:
        depends_on = metadata.get("depends_on")
        if depends_on is None:
            return []
        if isinstance(depends_on, str):
            return [depends_on]
        return list(depends_on)

    def get_task(self, task_id: str) -> Optional[Dict[str, Any]]:
        """
        根據ID獲取任務

        參數:
            task_id (str): 任務ID

        返回:
            Optional[Dict[str, Any]]: 任務信息
        """
        for task in self.tasks:
            if task["id"] == task_id:
                return task
        return None

    def get_all_tasks(self) -> List[Dict[str, Any]]:
        return list(self.tasks)

    def get_next_task(self) -> Optional[Dict[str, Any]]:
        """
        第一個依賴全部完成的待處理任務

        返回:
            Optional[Dict[str, Any]]: 任務；沒有可執行任務時為 None
        """
        for task in self.get_pending_tasks():
            dependencies = self.dependencies_of(task["metadata"])
            if all(self.get_task(d)["status"] == COMPLETED for d in dependencies):
                return task
        return None

    def complete_task(self, task_id: str, result: Any = None) -> None:
        """
        標記任務完成

        異常:
            MalformedInputError: 任務不存在
        """
        task = self.get_task(task_id)
        if task is None:
            raise MalformedInputError(f"Unknown task {task_id}")
        task["status"] = COMPLETED
        task["result"] = result
        logger.debug("Task %s completed", task_id)

    def get_pending_tasks(self) -> List[Dict[str, Any]]:
        return [task for task in self.tasks if task["status"] != COMPLETED]

    def get_completed_tasks(self) -> List[Dict[str, Any]]:
        return [task for task in self.tasks if task["status"] == COMPLETED]

    def monitor_progress(self) -> Dict[str, Any]:
        """
        監控任務進度

        返回:
            Dict[str, Any]: 進度信息
        """
        total = len(self.tasks)
        completed = len(self.get_completed_tasks())
        return {
            "total": total,
            "completed": completed,
            "pending": total - completed,
            "progress_percentage": (completed / total * 100) if total > 0 else 0,
        }
